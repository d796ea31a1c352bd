"""Named polygons used by tests, scripts and the CLI."""

from __future__ import annotations

import math
import random
import time
from fractions import Fraction

from .errors import GenerationError
from .generate import generate_polygon
from .geometry import Polygon, build_visibility_graph


def polygon(points) -> Polygon:
    return Polygon(tuple((Fraction(x), Fraction(y)) for x, y in points)).check()


SQUARE = polygon([(0, 0), (1, 0), (1, 1), (0, 1)])
TRIANGLE = polygon([(0, 0), (1, 0), (0, 1)])
P5 = polygon([(0, 0), (4, 0), (4, 2), (2, Fraction(6, 5)), (0, 2)])

# centrally symmetric, non-convex: v_{i+4} = -v_i
SYM8 = polygon([(4, 1), (3, 1), (2, 3), (-6, 2), (-4, -1), (-3, -1), (-2, -3), (6, -2)])

# 4-fold rotation, no reflection symmetry; its mirror image has a different graph
PINWHEEL8 = polygon([(5, 1), (3, 1), (-1, 5), (-1, 3), (-5, -1), (-3, -1), (1, -5), (1, -3)])


def regular_polygon(n: int, radius: int = 10**6) -> Polygon:
    """Rational approximation of a regular n-gon (vertices on a tiny perturbation of a circle)."""
    pts = []
    for i in range(n):
        a = 2 * math.pi * i / n
        pts.append((Fraction(radius * math.cos(a)).limit_denominator(1000), Fraction(radius * math.sin(a)).limit_denominator(1000)))
    return polygon(pts)


def convex_polygon(n: int) -> Polygon:
    """Strictly convex lattice polygon: points (i, i^2) closed up by the parabola's convexity."""
    return polygon([(i, i * i) for i in range(n)])


def deep_pocket_pair() -> tuple[Polygon, Polygon, frozenset]:
    """Two polygons whose angle lists differ in exactly two entries.

    v_0 sits at the bottom of a narrow pocket and sees only v_1 and v_6.
    Moving it along the circle through v_1 and v_6 keeps its own angle and
    the graph, changing only the last angle at v_1 and the first at v_6.
    Returns both polygons and the hidden (vertex, slot) readings.
    """
    rest = [(1, 0), (10, Fraction(1, 2)), (10, 2), (-10, 2), (-10, Fraction(1, 2)), (-1, 0)]
    p = polygon([(0, -10)] + rest)
    # rational point on the circle centred (0, -99/20) with radius 101/20
    t = Fraction(-9, 10)
    cx, cy, r = Fraction(0), Fraction(-99, 20), Fraction(101, 20)
    x = cx + r * 2 * t / (1 + t * t)
    y = cy - r * (1 - t * t) / (1 + t * t)
    q = polygon([(x, y)] + rest)
    vg = build_visibility_graph(p)
    hidden = frozenset({(6, 1), (1, vg.degree(1) - 1)})
    return p, q, hidden


# frozen result of find_degree_twin_pair(); kept for scripts and the CLI
DEGREE_TWINS = (
    polygon([(8, 3), (7, 3), (7, 8), (5, 8), (1, 6), (2, 4), (3, 1), (6, 1)]),
    polygon([(7, 6), (4, 7), (0, 7), (1, 5), (2, 1), (7, 1), (8, 4), (6, 6)]),
)


def find_degree_twin_pair(
    n_range: tuple[int, int] = (5, 8),
    coord_bound: int = 8,
    max_seeds: int = 20000,
    time_budget: float = 60.0,
) -> tuple[Polygon, Polygon] | None:
    """Two lattice polygons with equal degree sequences but different graphs.

    A basic agent touring the boundary sees only degrees, so such a pair
    looks the same to it.  Returns None when the budget runs out.
    """
    t0 = time.monotonic()
    seen: dict = {}
    for seed in range(1, max_seeds + 1):
        if time.monotonic() - t0 > time_budget:
            return None
        n = random.Random(seed).randint(*n_range)
        try:
            p = generate_polygon(n, seed, coord_bound=coord_bound, max_tries=20)
        except GenerationError:
            continue
        g = build_visibility_graph(p)
        for q, h in seen.get(g.degrees(), ()):
            if h.incident != g.incident:
                return q, p
        seen.setdefault(g.degrees(), []).append((p, g))
    return None


NAMED = {
    "square": SQUARE,
    "triangle": TRIANGLE,
    "p5": P5,
    "sym8": SYM8,
    "pinwheel8": PINWHEEL8,
}
