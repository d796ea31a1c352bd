"""Random simple polygons on an integer lattice.

Points are sampled uniformly, joined in random order and untangled with 2-opt
moves until the boundary is simple.  Candidates with a collinear triple or
without angular slack for the reconstructor are rejected and resampled.
"""

from __future__ import annotations

import random
from fractions import Fraction

from .angle_recon import reconstruct_from_angles, reconstruct_unknown_n
from .errors import GenerationError, ReconstructionError
from .geometry import (
    ANGLE_EPS,
    Polygon,
    has_collinear_triple,
    is_simple,
    measure,
    orient,
    signed_area2,
)

#: coordinate bound keeping exact predicates on small integers
MAX_COORD = 2**16
DEFAULT_COORD = 1024
SLACK_FACTOR = 100


def _proper_cross(a, b, c, d) -> bool:
    d1, d2 = orient(c, d, a), orient(c, d, b)
    d3, d4 = orient(a, b, c), orient(a, b, d)
    return d1 * d2 < 0 and d3 * d4 < 0


def untangle(points: list) -> list:
    """Apply 2-opt reversals until no two boundary edges cross.

    Each reversal strictly shortens the tour, so this terminates for points
    without collinear triples.
    """
    pts = list(points)
    n = len(pts)
    changed = True
    while changed:
        changed = False
        for a in range(n - 2):
            for b in range(a + 2, n):
                if a == 0 and b == n - 1:
                    continue
                if _proper_cross(pts[a], pts[a + 1], pts[b], pts[(b + 1) % n]):
                    pts[a + 1 : b + 1] = reversed(pts[a + 1 : b + 1])
                    changed = True
    return pts


def angular_slack_ok(polygon: Polygon, eps: float = ANGLE_EPS, factor: float = SLACK_FACTOR) -> bool:
    """Every triangle sum the reconstructor tests is near pi or far from it."""
    m = measure(polygon)
    devs: list[float] = []
    try:
        reconstruct_from_angles(m, polygon.n, eps=eps, record=devs)
        reconstruct_unknown_n(iter(m), eps=eps, record=devs, cross_check=False)
    except ReconstructionError:
        return False
    return not any(eps <= d <= factor * eps for d in devs)


def _lattice_points(rng: random.Random, n: int, bound: int) -> list:
    pts: set = set()
    while len(pts) < n:
        pts.add((rng.randint(0, bound), rng.randint(0, bound)))
    out = sorted(pts)
    rng.shuffle(out)
    return out


def generate_polygon(n: int, seed: int, *, coord_bound: int = DEFAULT_COORD, max_tries: int = 2000) -> Polygon:
    """Deterministic random simple polygon with ``n`` vertices."""
    if n < 3:
        raise GenerationError("invalid size: n must be at least 3")
    if coord_bound > MAX_COORD:
        raise GenerationError(f"coordinate bound above {MAX_COORD}")
    rng = random.Random(seed)
    for _ in range(max_tries):
        pts = _lattice_points(rng, n, coord_bound)
        if has_collinear_triple(pts):
            continue
        pts = untangle(pts)
        if signed_area2(pts) < 0:
            pts.reverse()
        poly = Polygon(tuple((Fraction(x), Fraction(y)) for x, y in pts))
        if not is_simple(poly.vertices) or not angular_slack_ok(poly):
            continue
        return poly
    raise GenerationError(f"generation failed (seed={seed}, n={n})")


def _rotate(p, fold: int, times: int):
    x, y = p
    for _ in range(times):
        x, y = (-y, x) if fold == 4 else (-x, -y)
    return (x, y)


def _sector_key(p):
    # pseudo-angle, only compared within one open half plane
    x, y = p
    return Fraction(-x, y) if y else Fraction(-(10**12))


def generate_symmetric_polygon(
    n: int, fold: int, seed: int, *, coord_bound: int = 64, max_tries: int = 2000
) -> Polygon:
    """Star-shaped polygon invariant under rotation by 2pi/fold about the origin.

    ``fold`` is 2 or 4 so that the rotation stays exact on the lattice.
    """
    if fold not in (2, 4) or n % fold or n < 3 or n // fold < (2 if fold == 2 else 1):
        raise GenerationError("invalid size: need fold in {2, 4} dividing n")
    m = n // fold
    rng = random.Random(seed)
    for _ in range(max_tries):
        pts: set = set()
        while len(pts) < m:
            if fold == 4:
                p = (rng.randint(1, coord_bound), rng.randint(0, coord_bound))
            else:
                p = (rng.randint(-coord_bound, coord_bound), rng.randint(1, coord_bound))
            pts.add(p)
        base = sorted(pts, key=_sector_key)
        verts = [_rotate(p, fold, r) for r in range(fold) for p in base]
        if has_collinear_triple(verts) or len(set(verts)) != n:
            continue
        poly = Polygon(tuple((Fraction(x), Fraction(y)) for x, y in verts))
        if not is_simple(poly.vertices) or not angular_slack_ok(poly):
            continue
        return poly
    raise GenerationError(f"generation failed (seed={seed}, n={n}, fold={fold})")


def corpus(count: int, n_range: tuple[int, int], seed0: int = 1, **kw) -> list[Polygon]:
    """``count`` polygons with seeds seed0.. and n cycling through ``n_range``."""
    lo, hi = n_range
    return [generate_polygon(lo + (s % (hi - lo + 1)), s, **kw) for s in range(seed0, seed0 + count)]


def symmetric_corpus(count: int, n_range: tuple[int, int] = (6, 16), seed0: int = 1) -> list[Polygon]:
    out = []
    s = seed0
    while len(out) < count:
        fold = 2 if s % 2 else 4
        sizes = [n for n in range(n_range[0], n_range[1] + 1) if n % fold == 0 and n // fold >= 2]
        out.append(generate_symmetric_polygon(sizes[s % len(sizes)], fold, s))
        s += 1
    return out

