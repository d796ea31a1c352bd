"""Plain-text file formats.

polygon:       ``n`` then n lines ``x y`` with each coordinate ``num/den``
visgraph:      ``n`` then n lines of CCW neighbor indices
measurements:  n lines of comma-separated radians (``?`` marks a missing angle)
labeled graph: see :func:`visrecon.labeled.to_text`
"""

from __future__ import annotations

from fractions import Fraction
from pathlib import Path
from typing import Sequence

from .errors import VisReconError
from .geometry import Polygon, VisibilityGraph


class ParseError(VisReconError, ValueError):
    pass


def _lines(text: str) -> list[str]:
    return [ln.strip() for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]


def _frac(tok: str) -> Fraction:
    try:
        return Fraction(tok)
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"bad coordinate {tok!r}") from exc


def _fmt_frac(f: Fraction) -> str:
    return f"{f.numerator}/{f.denominator}"


def polygon_to_text(p: Polygon) -> str:
    rows = [str(p.n)] + [f"{_fmt_frac(x)} {_fmt_frac(y)}" for x, y in p.vertices]
    return "\n".join(rows) + "\n"


def polygon_from_text(text: str) -> Polygon:
    lines = _lines(text)
    if not lines:
        raise ParseError("empty polygon file")
    try:
        n = int(lines[0])
    except ValueError as exc:
        raise ParseError("first line must be the vertex count") from exc
    if len(lines) - 1 != n:
        raise ParseError(f"expected {n} vertex lines, found {len(lines) - 1}")
    pts = []
    for ln in lines[1:]:
        parts = ln.split()
        if len(parts) != 2:
            raise ParseError(f"bad vertex line {ln!r}")
        pts.append((_frac(parts[0]), _frac(parts[1])))
    return Polygon(tuple(pts))


def visgraph_to_text(g: VisibilityGraph) -> str:
    return "\n".join([str(g.n)] + [" ".join(map(str, row)) for row in g.incident]) + "\n"


def visgraph_from_text(text: str) -> VisibilityGraph:
    lines = _lines(text)
    try:
        n = int(lines[0])
        rows = tuple(tuple(int(t) for t in ln.split()) for ln in lines[1:])
    except (ValueError, IndexError) as exc:
        raise ParseError("bad visibility graph file") from exc
    if len(rows) != n:
        raise ParseError(f"expected {n} neighbor lines, found {len(rows)}")
    return VisibilityGraph(n, rows)


def measurements_to_text(m: Sequence[Sequence[float | None]]) -> str:
    return "".join(",".join("?" if a is None else repr(float(a)) for a in row) + "\n" for row in m)


def measurements_from_text(text: str) -> tuple:
    out = []
    for ln in _lines(text):
        row = []
        for tok in ln.split(","):
            tok = tok.strip()
            if tok == "?":
                row.append(None)
                continue
            try:
                row.append(float(tok))
            except ValueError as exc:
                raise ParseError(f"bad angle {tok!r}") from exc
        out.append(tuple(row))
    return tuple(out)


def read_polygon(path) -> Polygon:
    return polygon_from_text(Path(path).read_text())


def read_visgraph(path) -> VisibilityGraph:
    return visgraph_from_text(Path(path).read_text())


def read_measurements(path) -> tuple:
    return measurements_from_text(Path(path).read_text())
