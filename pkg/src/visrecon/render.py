"""Deterministic SVG drawings of polygons, their sight lines and vertex classes."""

from __future__ import annotations

from typing import Sequence

from .geometry import Polygon, VisibilityGraph

PALETTE = (
    "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd",
    "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf",
)


def _num(x: float) -> str:
    s = f"{x:.6f}".rstrip("0").rstrip(".")
    return "0" if s in ("-0", "") else s


def render_svg(
    polygon: Polygon,
    visgraph: VisibilityGraph | None = None,
    classes: Sequence[int] | None = None,
    size: int = 400,
) -> str:
    pts = polygon.float_coords
    xs = [p[0] for p in pts]
    ys = [-p[1] for p in pts]  # SVG y axis points down
    w = max(xs) - min(xs) or 1.0
    h = max(ys) - min(ys) or 1.0
    margin = 0.05 * max(w, h)
    vb = (min(xs) - margin, min(ys) - margin, w + 2 * margin, h + 2 * margin)
    stroke = max(w, h) / 200
    radius = max(w, h) / 80
    out = [
        '<svg xmlns="http://www.w3.org/2000/svg" '
        f'width="{size}" height="{size}" viewBox="{" ".join(_num(v) for v in vb)}">'
    ]
    path = " ".join(f"{'M' if i == 0 else 'L'}{_num(x)},{_num(y)}" for i, (x, y) in enumerate(zip(xs, ys)))
    out.append(f'<path class="boundary" d="{path} Z" fill="#f4f4f4" stroke="#000" stroke-width="{_num(stroke)}"/>')
    if visgraph is not None:
        n = polygon.n
        for a, b in sorted(tuple(sorted(e)) for e in visgraph.edges()):
            if (b - a) % n in (1, n - 1):
                continue
            out.append(
                f'<line class="chord" x1="{_num(xs[a])}" y1="{_num(ys[a])}" x2="{_num(xs[b])}" y2="{_num(ys[b])}" '
                f'stroke="#888" stroke-width="{_num(stroke / 2)}"/>'
            )
    for i, (x, y) in enumerate(zip(xs, ys)):
        fill = PALETTE[classes[i] % len(PALETTE)] if classes is not None else "#000"
        out.append(f'<circle class="vertex" data-index="{i}" cx="{_num(x)}" cy="{_num(y)}" r="{_num(radius)}" fill="{fill}"/>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
