"""Exact simple-polygon geometry and the vertex visibility graph.

Coordinates are :class:`fractions.Fraction`.  Every combinatorial decision
(orientation, intersection, containment, angular order) is made exactly; to
keep that cheap the polygon caches an integer copy of its coordinates scaled
by the common denominator, which leaves all of these predicates unchanged.
Angles are the only floating-point outputs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, cmp_to_key
from itertools import combinations
from typing import Iterable, Sequence

from .errors import GeometryError, GraphError

Point = tuple  # (x, y) pair of Fractions
TWO_PI = 2.0 * math.pi

#: tolerance for every floating comparison of angles
ANGLE_EPS = 1e-9


def as_point(p) -> tuple[Fraction, Fraction]:
    return (Fraction(p[0]), Fraction(p[1]))


def orient(a, b, c):
    """Twice the signed area of triangle abc (positive for a left turn)."""
    return (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])


def _on_segment(a, b, p) -> bool:
    # p is known to be collinear with a, b
    return min(a[0], b[0]) <= p[0] <= max(a[0], b[0]) and min(a[1], b[1]) <= p[1] <= max(a[1], b[1])


def segments_intersect(p1, p2, q1, q2) -> bool:
    """True if the closed segments p1p2 and q1q2 share at least one point."""
    d1 = orient(q1, q2, p1)
    d2 = orient(q1, q2, p2)
    d3 = orient(p1, p2, q1)
    d4 = orient(p1, p2, q2)
    if ((d1 > 0 and d2 < 0) or (d1 < 0 and d2 > 0)) and ((d3 > 0 and d4 < 0) or (d3 < 0 and d4 > 0)):
        return True
    if d1 == 0 and _on_segment(q1, q2, p1):
        return True
    if d2 == 0 and _on_segment(q1, q2, p2):
        return True
    if d3 == 0 and _on_segment(p1, p2, q1):
        return True
    if d4 == 0 and _on_segment(p1, p2, q2):
        return True
    return False


def signed_area2(pts: Sequence) -> Fraction:
    n = len(pts)
    return sum(pts[i][0] * pts[(i + 1) % n][1] - pts[(i + 1) % n][0] * pts[i][1] for i in range(n))


def has_collinear_triple(pts: Sequence) -> bool:
    return any(orient(a, b, c) == 0 for a, b, c in combinations(pts, 3))


def _scaled_integers(pts: Sequence[tuple[Fraction, Fraction]]) -> tuple[tuple[int, int], ...]:
    scale = 1
    for x, y in pts:
        scale = math.lcm(scale, x.denominator, y.denominator)
    return tuple((int(x * scale), int(y * scale)) for x, y in pts)


def is_simple(vertices: Sequence) -> bool:
    """Check that ``vertices`` bound a CCW simple polygon in general position.

    Raises GeometryError on fewer than three or duplicate vertices.
    """
    pts = [as_point(p) for p in vertices]
    n = len(pts)
    if n < 3:
        raise GeometryError("invalid size: a polygon needs at least 3 vertices")
    if len(set(pts)) != n:
        raise GeometryError("degenerate input: duplicate vertices")
    pts = list(_scaled_integers(pts))
    if has_collinear_triple(pts):
        return False
    for i in range(n):
        for j in range(i + 2, n):
            if i == 0 and j == n - 1:
                continue
            if segments_intersect(pts[i], pts[(i + 1) % n], pts[j], pts[(j + 1) % n]):
                return False
    return signed_area2(pts) > 0


@dataclass(frozen=True)
class Polygon:
    """Vertices v_0..v_{n-1} in CCW boundary order with rational coordinates.

    Construction only normalizes coordinates; call :meth:`check` (or
    :func:`is_simple`) to validate simplicity and general position.
    """

    vertices: tuple

    def __post_init__(self):
        pts = tuple(as_point(p) for p in self.vertices)
        if len(pts) < 3:
            raise GeometryError("invalid size: a polygon needs at least 3 vertices")
        object.__setattr__(self, "vertices", pts)

    @property
    def n(self) -> int:
        return len(self.vertices)

    def __len__(self) -> int:
        return len(self.vertices)

    def __getitem__(self, i: int):
        return self.vertices[i % len(self.vertices)]

    @cached_property
    def int_coords(self) -> tuple[tuple[int, int], ...]:
        return _scaled_integers(self.vertices)

    @cached_property
    def float_coords(self) -> tuple[tuple[float, float], ...]:
        return tuple((float(x), float(y)) for x, y in self.vertices)

    def check(self) -> "Polygon":
        if not is_simple(self.vertices):
            raise GeometryError("not a simple CCW polygon in general position")
        return self

    def rotated(self, start: int) -> "Polygon":
        """Same polygon with vertex ``start`` relabeled as v_0."""
        n = self.n
        return Polygon(tuple(self.vertices[(start + i) % n] for i in range(n)))

    def mirrored(self) -> "Polygon":
        """Mirror image across the x-axis, relisted CCW from the image of v_0."""
        n = self.n
        return Polygon(tuple((x, -y) for x, y in (self.vertices[(-i) % n] for i in range(n))))

    def without(self, removed: Iterable[int]) -> "Polygon":
        drop = {i % self.n for i in removed}
        return Polygon(tuple(p for i, p in enumerate(self.vertices) if i not in drop))


def _strictly_inside(pts, px, py) -> bool:
    # crossing number with a half-open rule; exact on integer input
    inside = False
    n = len(pts)
    for k in range(n):
        ax, ay = pts[k]
        bx, by = pts[(k + 1) % n]
        if (ay > py) != (by > py):
            o = (bx - ax) * (py - ay) - (px - ax) * (by - ay)
            if (o > 0) == (by > ay):
                inside = not inside
    return inside


def sees(polygon: Polygon, i: int, j: int) -> bool:
    """Exact vertex-vertex visibility.

    The open segment v_i v_j must cross no boundary edge and its midpoint must
    lie inside the polygon.  General position rules out grazing contacts.
    """
    n = polygon.n
    i %= n
    j %= n
    if i == j:
        raise GeometryError("identical vertices")
    if (j - i) % n in (1, n - 1):
        return True
    pts = polygon.int_coords
    a, b = pts[i], pts[j]
    for k in range(n):
        k2 = (k + 1) % n
        if k in (i, j) or k2 in (i, j):
            continue
        if segments_intersect(a, b, pts[k], pts[k2]):
            return False
    doubled = [(2 * x, 2 * y) for x, y in pts]
    return _strictly_inside(doubled, a[0] + b[0], a[1] + b[1])


def ccw_sort(center, reference, points: Sequence, key=lambda p: p):
    """Sort ``points`` by CCW angle around ``center`` starting at ``reference``."""
    cx, cy = center
    rx, ry = reference[0] - cx, reference[1] - cy

    def half(v):
        c = rx * v[1] - ry * v[0]
        d = rx * v[0] + ry * v[1]
        return 0 if c > 0 or (c == 0 and d > 0) else 1

    def cmp(p, q):
        pp, qq = key(p), key(q)
        u = (pp[0] - cx, pp[1] - cy)
        w = (qq[0] - cx, qq[1] - cy)
        hu, hw = half(u), half(w)
        if hu != hw:
            return hu - hw
        c = u[0] * w[1] - u[1] * w[0]
        return -1 if c > 0 else (1 if c < 0 else 0)

    return sorted(points, key=cmp_to_key(cmp))


@dataclass(frozen=True)
class VisibilityGraph:
    """Per-vertex CCW-ordered lists of visible vertices.

    ``incident[i]`` starts with ``i+1`` and ends with ``i-1`` (mod n).
    """

    n: int
    incident: tuple

    def __post_init__(self):
        object.__setattr__(self, "incident", tuple(tuple(int(j) for j in row) for row in self.incident))

    @classmethod
    def from_edges(cls, n: int, edges: Iterable) -> "VisibilityGraph":
        """Build from an undirected edge set, ordering neighbors by boundary offset."""
        adj = [set() for _ in range(n)]
        for a, b in edges:
            adj[a].add(b)
            adj[b].add(a)
        return cls(n, tuple(tuple(sorted(adj[i], key=lambda j, i=i: (j - i) % n)) for i in range(n)))

    @classmethod
    def complete(cls, n: int) -> "VisibilityGraph":
        return cls(n, tuple(tuple((i + s) % n for s in range(1, n)) for i in range(n)))

    @cached_property
    def _slot_maps(self):
        return tuple({j: s + 1 for s, j in enumerate(row)} for row in self.incident)

    def degree(self, i: int) -> int:
        return len(self.incident[i % self.n])

    def degrees(self) -> tuple[int, ...]:
        return tuple(len(row) for row in self.incident)

    def slot(self, i: int, j: int) -> int:
        """1-based position of the edge to ``j`` in the CCW list at ``i``."""
        try:
            return self._slot_maps[i % self.n][j % self.n]
        except KeyError:
            raise GraphError(f"{i} does not see {j}") from None

    def has_edge(self, i: int, j: int) -> bool:
        return (j % self.n) in self._slot_maps[i % self.n]

    def edges(self) -> frozenset:
        return frozenset(frozenset((i, j)) for i, row in enumerate(self.incident) for j in row)

    def edge_count(self) -> int:
        return sum(len(row) for row in self.incident) // 2

    def is_complete(self) -> bool:
        return all(len(row) == self.n - 1 for row in self.incident)

    def check(self) -> "VisibilityGraph":
        n = self.n
        if n < 3 or len(self.incident) != n:
            raise GraphError("not a polygon visibility graph: bad size")
        for i, row in enumerate(self.incident):
            if len(row) < 2 or row[0] != (i + 1) % n or row[-1] != (i - 1) % n:
                raise GraphError(f"not a polygon visibility graph: bad boundary edges at {i}")
            if len(set(row)) != len(row) or i in row:
                raise GraphError(f"not a polygon visibility graph: bad neighbor list at {i}")
            for j in row:
                if not self.has_edge(j, i):
                    raise GraphError(f"not a polygon visibility graph: asymmetric edge {i}-{j}")
        return self


def build_visibility_graph(polygon: Polygon) -> VisibilityGraph:
    n = polygon.n
    adj = [[] for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            if sees(polygon, i, j):
                adj[i].append(j)
                adj[j].append(i)
    pts = polygon.int_coords
    incident = []
    for i in range(n):
        row = ccw_sort(pts[i], pts[(i + 1) % n], adj[i], key=lambda j: pts[j])
        incident.append(tuple(row))
    return VisibilityGraph(n, tuple(incident))


def _ccw_angle(center, u, w) -> float:
    """CCW angle at ``center`` from direction ``u`` to direction ``w`` in [0, 2pi)."""
    ux, uy = u[0] - center[0], u[1] - center[1]
    wx, wy = w[0] - center[0], w[1] - center[1]
    a = math.atan2(float(ux * wy - uy * wx), float(ux * wx + uy * wy))
    return a + TWO_PI if a < 0 else a


def angles_from_coords(coords: Sequence, visgraph: VisibilityGraph, i: int) -> tuple[float, ...]:
    row = visgraph.incident[i]
    c = coords[i]
    return tuple(_ccw_angle(c, coords[row[s]], coords[row[s + 1]]) for s in range(len(row) - 1))


def measure_coords(coords: Sequence, visgraph: VisibilityGraph) -> tuple:
    """Ordered list of angle measurements for arbitrary (e.g. float) coordinates."""
    return tuple(angles_from_coords(coords, visgraph, i) for i in range(visgraph.n))


def angle_measurement(polygon: Polygon, i: int, visgraph: VisibilityGraph | None = None) -> tuple[float, ...]:
    """Consecutive CCW angles between the sight lines at v_i."""
    vg = visgraph if visgraph is not None else build_visibility_graph(polygon)
    return angles_from_coords(polygon.int_coords, vg, i % polygon.n)


def measure(polygon: Polygon, visgraph: VisibilityGraph | None = None) -> tuple:
    """The ordered list of angle measurements of ``polygon``."""
    vg = visgraph if visgraph is not None else build_visibility_graph(polygon)
    return measure_coords(polygon.int_coords, vg)


def inner_angle(polygon: Polygon, i: int) -> float:
    pts = polygon.int_coords
    n = polygon.n
    return _ccw_angle(pts[i % n], pts[(i + 1) % n], pts[(i - 1) % n])


def compass_observation(polygon: Polygon, i: int, visgraph: VisibilityGraph | None = None) -> tuple[float, ...]:
    vg = visgraph if visgraph is not None else build_visibility_graph(polygon)
    pts = polygon.int_coords
    c = pts[i % polygon.n]
    out = []
    for j in vg.incident[i % polygon.n]:
        a = math.atan2(float(pts[j][1] - c[1]), float(pts[j][0] - c[0]))
        out.append(a + TWO_PI if a < 0 else a)
    return tuple(out)


def distance_observation(polygon: Polygon, i: int, visgraph: VisibilityGraph | None = None) -> tuple[float, ...]:
    vg = visgraph if visgraph is not None else build_visibility_graph(polygon)
    p = polygon.vertices[i % polygon.n]
    return tuple(
        math.sqrt((polygon.vertices[j][0] - p[0]) ** 2 + (polygon.vertices[j][1] - p[1]) ** 2)
        for j in vg.incident[i % polygon.n]
    )


def angle_sum_error(measurements: Sequence[Sequence[float]]) -> float:
    """Deviation of the total measured angle from (n-2)pi."""
    n = len(measurements)
    return abs(math.fsum(a for m in measurements for a in m) - (n - 2) * math.pi)


def is_ear(visgraph: VisibilityGraph, i: int) -> bool:
    n = visgraph.n
    if n == 3:
        return True
    return visgraph.has_edge(i - 1, i + 1)


def cut_ears(visgraph: VisibilityGraph, ears: Iterable[int]) -> VisibilityGraph:
    """Remove pairwise non-adjacent ears, compacting indices in boundary order."""
    n = visgraph.n
    cut = {e % n for e in ears}
    for e in cut:
        if not is_ear(visgraph, e):
            raise GraphError(f"vertex {e} is not an ear")
    for e in cut:
        if (e + 1) % n in cut:
            raise GraphError("adjacent ear cut unsupported")
    if n - len(cut) < 3:
        raise GraphError("would leave no polygon")
    keep = [i for i in range(n) if i not in cut]
    new = {old: k for k, old in enumerate(keep)}
    rows = tuple(tuple(new[j] for j in visgraph.incident[i] if j in new) for i in keep)
    return VisibilityGraph(len(keep), rows)


def triangulate(visgraph: VisibilityGraph) -> list[tuple[int, int, int]]:
    """Combinatorial ear clipping; triangles are returned in CCW index order."""
    n = visgraph.n
    remaining = list(range(n))
    triangles = []
    while len(remaining) > 3:
        m = len(remaining)
        for p in range(m):
            a, b, c = remaining[p - 1], remaining[p], remaining[(p + 1) % m]
            if visgraph.has_edge(a, c):
                triangles.append((a, b, c))
                del remaining[p]
                break
        else:
            raise GraphError("not a polygon visibility graph: no ear found")
    a, b, c = remaining
    if not (visgraph.has_edge(a, b) and visgraph.has_edge(b, c) and visgraph.has_edge(a, c)):
        raise GraphError("not a polygon visibility graph: final triangle missing an edge")
    triangles.append((a, b, c))
    return triangles
