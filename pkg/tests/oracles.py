"""Reference computations built independently of the library under test.

They share only the input types (polygon vertex tuples, incidence lists,
arc lists) with the package and use different algorithms: shapely for
containment, atan2 for angular order, tree unfolding for indistinguishability.
"""

from __future__ import annotations

import math
from itertools import combinations

from shapely.geometry import LineString, LinearRing
from shapely.geometry import Polygon as ShapelyPolygon


def floats(poly):
    return [(float(x), float(y)) for x, y in poly.vertices]


def oracle_is_simple(pts) -> bool:
    pts = [(float(x), float(y)) for x, y in pts]
    if len(set(pts)) != len(pts):
        raise ValueError("duplicate")
    ring = LinearRing(pts)
    area2 = sum(pts[i][0] * pts[(i + 1) % len(pts)][1] - pts[(i + 1) % len(pts)][0] * pts[i][1] for i in range(len(pts)))
    collinear = any(
        abs((b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])) < 1e-12
        for a, b, c in combinations(pts, 3)
    )
    return ring.is_simple and area2 > 0 and not collinear


def oracle_sees(poly, i, j) -> bool:
    pts = floats(poly)
    shape = ShapelyPolygon(pts)
    return shape.buffer(1e-9).covers(LineString([pts[i], pts[j]]))


def oracle_incident(poly) -> tuple:
    """Visible vertices sorted by CCW angle measured from the direction of v_{i+1}."""
    pts = floats(poly)
    n = len(pts)
    rows = []
    for i in range(n):
        vis = [j for j in range(n) if j != i and oracle_sees(poly, i, j)]
        x0, y0 = pts[i]
        ref = math.atan2(pts[(i + 1) % n][1] - y0, pts[(i + 1) % n][0] - x0)
        vis.sort(key=lambda j: (math.atan2(pts[j][1] - y0, pts[j][0] - x0) - ref) % (2 * math.pi))
        rows.append(tuple(vis))
    return tuple(rows)


def oracle_angles(poly, incident) -> tuple:
    pts = floats(poly)
    out = []
    for i, row in enumerate(incident):
        x0, y0 = pts[i]
        dirs = [math.atan2(pts[j][1] - y0, pts[j][0] - x0) for j in row]
        out.append(tuple((dirs[s + 1] - dirs[s]) % (2 * math.pi) for s in range(len(row) - 1)))
    return tuple(out)


def interior_angle(poly, i) -> float:
    pts = floats(poly)
    n = len(pts)
    x0, y0 = pts[i]
    a = math.atan2(pts[(i + 1) % n][1] - y0, pts[(i + 1) % n][0] - x0)
    b = math.atan2(pts[(i - 1) % n][1] - y0, pts[(i - 1) % n][0] - x0)
    return (b - a) % (2 * math.pi)


def view_classes(arcs) -> list[int]:
    """Classes from depth-n unfoldings: nodes with equal views up to depth n are merged."""
    n = len(arcs)
    ids = [0] * n
    for _ in range(n):
        views = [tuple(sorted((str(lab), ids[t]) for lab, t in arcs[u])) for u in range(n)]
        table: dict = {}
        ids = [table.setdefault(v, len(table)) for v in views]
    # renumber by smallest member
    first: dict = {}
    return [first.setdefault(c, len(first)) for c in ids]


def language(arcs, start, length) -> set:
    """All label strings of walks of exactly ``length`` arcs from ``start``."""
    out = set()
    frontier = [((), start)]
    for _ in range(length):
        nxt = []
        for word, u in frontier:
            for lab, t in arcs[u]:
                nxt.append((word + (str(lab),), t))
        frontier = nxt
    for word, _ in frontier:
        out.add(word)
    return out


def brute_distinguishable(arcs1, s1, arcs2, s2, max_len) -> int | None:
    """Length of the shortest label string walkable from exactly one side."""
    for L in range(1, max_len + 1):
        if language(arcs1, s1, L) != language(arcs2, s2, L):
            return L
    return None


def triangulation_ok(n, triangles, edges) -> bool:
    if len(triangles) != n - 2:
        return False
    count: dict = {}
    covered = set()
    for tri in triangles:
        covered.update(tri)
        for a, b in combinations(tri, 2):
            e = frozenset((a, b))
            if e not in edges:
                return False
            count[e] = count.get(e, 0) + 1
    for e, c in count.items():
        a, b = sorted(e)
        boundary = (b - a) % n in (1, n - 1)
        if (boundary and c != 1) or (not boundary and c != 2):
            return False
    return covered == set(range(n))


def normalized(coords):
    z = [complex(x, y) for x, y in coords]
    return [(p - z[0]) / (z[1] - z[0]) for p in z]

