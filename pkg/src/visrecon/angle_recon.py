"""Visibility graph reconstruction from the ordered list of angle measurements.

Edges are identified by boundary distance.  At step ``k`` every edge
``{v_i, v_{i+t}}`` with ``t <= k`` is known, which fixes how many sight lines
of ``v_i`` point into ``v_{i+1}..v_{i+k}`` and therefore which slot the
candidate edge ``{v_i, v_{i+k+1}}`` would occupy at both endpoints.  The
candidate exists exactly when the triangle closed through a common neighbor
``v_j`` between them has measured angles summing to pi.
"""

from __future__ import annotations

import logging
import math
from bisect import bisect_left, insort
from dataclasses import dataclass
from itertools import accumulate
from typing import Iterable, Iterator, Sequence

from .errors import ReconstructionError
from .geometry import ANGLE_EPS, VisibilityGraph, triangulate

log = logging.getLogger(__name__)


def angle_between(measurement: Sequence[float], a: int, b: int) -> float:
    """Angle between the ``a``-th and ``b``-th sight line (1-based, a < b)."""
    d = len(measurement) + 1
    if not (1 <= a < b <= d):
        raise ReconstructionError(f"invalid edge slot: ({a}, {b}) with degree {d}")
    return math.fsum(measurement[a - 1 : b - 1])


class PartialVisibility:
    """Edges of the visibility graph known so far, indexed by boundary offset.

    ``right[i]`` holds the sorted offsets ``t`` with ``{v_i, v_{i+t}}`` known,
    ``left[i]`` the offsets ``t`` with ``{v_{i-t}, v_i}`` known.  With ``n``
    unset, indices are positions along an open boundary chain and never wrap.
    """

    def __init__(self, measurements: Sequence[Sequence[float]], n: int | None = None):
        self.n = n
        self.k = 1
        self.measurements = measurements
        self.right: dict[int, list[int]] = {}
        self.left: dict[int, list[int]] = {}
        self._prefix: dict[int, list[float]] = {}

    def _v(self, i: int) -> int:
        return i % self.n if self.n else i

    def degree(self, i: int) -> int:
        return len(self.measurements[self._v(i)]) + 1

    def _sum(self, i: int, a: int, b: int) -> float:
        # angle between slots a < b at vertex i
        v = self._v(i)
        pre = self._prefix.get(v)
        if pre is None:
            pre = self._prefix[v] = [0.0, *accumulate(self.measurements[v])]
        return pre[b - 1] - pre[a - 1]

    def add_edge(self, i: int, t: int) -> None:
        a, b = self._v(i), self._v(i + t)
        r = self.right.setdefault(a, [])
        if t not in r:
            insort(r, t)
        l_ = self.left.setdefault(b, [])
        if t not in l_:
            insort(l_, t)

    def has_edge(self, i: int, t: int) -> bool:
        r = self.right.get(self._v(i), ())
        p = bisect_left(r, t)
        return p < len(r) and r[p] == t

    def right_count(self, i: int, t: int) -> int:
        """Known neighbors of v_i among v_{i+1}..v_{i+t-1}."""
        return bisect_left(self.right.get(self._v(i), ()), t)

    def left_count(self, i: int, t: int) -> int:
        """Known neighbors of v_i among v_{i-t+1}..v_{i-1}."""
        return bisect_left(self.left.get(self._v(i), ()), t)

    def edge_set(self) -> frozenset:
        out = set()
        for a, offs in self.right.items():
            for t in offs:
                out.add(frozenset((a, self._v(a + t))))
        return frozenset(out)

    def triangle_sums(self, i: int, t: int, first_only: bool = True) -> list[float] | None:
        """Angle sums alpha+beta+gamma for common neighbors of v_i and v_{i+t}.

        Returns None when some slot the criterion needs does not exist.
        """
        b = i + t
        d_i, d_b = self.degree(i), self.degree(b)
        r = self.right_count(i, t)
        lb = self.left_count(b, t)
        if r + 1 > d_i or d_b - lb < 1:
            return None
        sums = []
        for s in self.right.get(self._v(i), ()):
            if s >= t:
                break
            j = i + s
            if not self.has_edge(j, t - s):
                continue
            x = s_slot = self.right_count(i, s) + 1
            y = d_b - self.left_count(b, t - s)
            p = d_b - lb
            if not (x <= r and p < y):
                raise ReconstructionError("inconsistent measurements")
            alpha = self._sum(i, s_slot, r + 1)
            beta = self._sum(b, p, y)
            d_j = self.degree(j)
            to_b = self.right_count(j, t - s) + 1
            to_i = d_j - self.left_count(j, s)
            if not to_b < to_i:
                raise ReconstructionError("inconsistent measurements")
            gamma = self._sum(j, to_b, to_i)
            sums.append(alpha + beta + gamma)
            if first_only:
                break
        return sums


def decide_edge(
    partial: PartialVisibility,
    measurements: Sequence[Sequence[float]] | None,
    i: int,
    *,
    t: int | None = None,
    eps: float = ANGLE_EPS,
    check_all: bool = False,
    record: list | None = None,
) -> bool:
    """Decide whether v_i sees v_{i+k+1} given the edges of step ``partial.k``.

    ``measurements`` defaults to the ones bound to ``partial``.  With
    ``check_all`` every common neighbor is tested and disagreement raises.
    ``record`` collects |sum - pi| for every tested triangle.
    """
    if measurements is not None and measurements is not partial.measurements:
        partial.measurements = measurements
        partial._prefix.clear()
    t = partial.k + 1 if t is None else t
    sums = partial.triangle_sums(i, t, first_only=not (check_all or record is not None))
    if not sums:
        return False
    devs = [abs(s - math.pi) for s in sums]
    if record is not None:
        record.extend(devs)
    verdicts = {d < eps for d in devs}
    if check_all and len(verdicts) > 1:
        raise ReconstructionError(f"inconsistent measurements: common neighbors disagree on {i}+{t}")
    return devs[0] < eps


def _graph_from_partial(partial: PartialVisibility, n: int) -> VisibilityGraph:
    edges = []
    for a, offs in partial.right.items():
        for t in offs:
            edges.append((a % n, (a + t) % n))
    g = VisibilityGraph.from_edges(n, edges)
    for i in range(n):
        if g.degree(i) != partial.degree(i):
            raise ReconstructionError(
                f"inconsistent measurements: vertex {i} has degree {partial.degree(i)} but {g.degree(i)} edges were found"
            )
    return g


def _check_shape(measurements: Sequence[Sequence[float]], n: int) -> None:
    if n < 3:
        raise ReconstructionError("invalid size")
    if len(measurements) != n:
        raise ReconstructionError(f"inconsistent measurements: {len(measurements)} vertices for n={n}")
    for m in measurements:
        if len(m) < 1:
            raise ReconstructionError("inconsistent measurements: vertex with fewer than two sight lines")


def iter_reconstruction(
    measurements: Sequence[Sequence[float]],
    n: int,
    *,
    eps: float = ANGLE_EPS,
    check_all: bool = False,
    record: list | None = None,
) -> Iterator[PartialVisibility]:
    """Yield the partial graph after every step k = 1, 2, ...

    The same object is yielded each time; copy ``edge_set()`` to keep history.
    """
    _check_shape(measurements, n)
    partial = PartialVisibility(measurements, n)
    for i in range(n):
        partial.add_edge(i, 1)
    partial.k = 1
    yield partial
    for t in range(2, n // 2 + 1):
        # for even n the antipodal pair would otherwise be decided twice
        starts = range(n // 2) if 2 * t == n else range(n)
        found = [i for i in starts if decide_edge(partial, None, i, t=t, eps=eps, check_all=check_all, record=record)]
        for i in found:
            partial.add_edge(i, t)
        partial.k = t
        yield partial


def reconstruct_from_angles(
    measurements: Sequence[Sequence[float]],
    n: int,
    *,
    eps: float = ANGLE_EPS,
    check_all: bool = False,
    record: list | None = None,
) -> VisibilityGraph:
    """Recover the visibility graph from the ordered list of angle measurements."""
    partial = None
    for partial in iter_reconstruction(measurements, n, eps=eps, check_all=check_all, record=record):
        pass
    return _graph_from_partial(partial, n)


def reconstruct_unknown_n(
    measurement_stream: Iterable[Sequence[float]],
    *,
    eps: float = ANGLE_EPS,
    check_all: bool = False,
    record: list | None = None,
    cross_check: bool = True,
) -> tuple[int, VisibilityGraph]:
    """Reconstruct while walking the boundary without knowing n.

    Measurements of v_0, v_1, ... are pulled one at a time.  After reading
    v_b every pair (v_a, v_b) is decided in order of increasing distance, so
    the graph induced by v_0..v_b is always complete.  Once v_0 has all of
    its sight lines, the last one found is v_{n-1}.
    """
    it = iter(measurement_stream)

    def pull():
        try:
            return tuple(next(it))
        except StopIteration:
            raise ReconstructionError("stream ended prematurely") from None

    seen = [pull()]
    d0 = len(seen[0]) + 1
    partial = PartialVisibility(seen, None)
    b = 0
    while True:
        b += 1
        seen.append(pull())
        for t in range(1, b + 1):
            a = b - t
            if t == 1 or decide_edge(partial, None, a, t=t, eps=eps, check_all=check_all, record=record):
                partial.add_edge(a, t)
        found = len(partial.right.get(0, ()))
        if found > d0:
            raise ReconstructionError("inconsistent measurements: v0 has more sight lines than measured")
        if found == d0:
            if partial.right[0][-1] != b:
                raise ReconstructionError("inconsistent measurements: v0 closed before its clockwise neighbor")
            break
    n = b + 1
    if n < 3:
        raise ReconstructionError("invalid size")
    graph = _graph_from_partial(partial, n)
    if cross_check:
        known = reconstruct_from_angles(seen, n, eps=eps)
        if known != graph:
            raise ReconstructionError("window divergence between chain and known-n reconstruction")
    return n, graph


def fill_missing_angle(measurements: Sequence[Sequence[float | None]], n: int | None = None) -> tuple:
    """Replace the single absent angle (None) using the (n-2)pi angle sum."""
    n = len(measurements) if n is None else n
    holes = [(v, s) for v, m in enumerate(measurements) for s, a in enumerate(m) if a is None]
    if len(holes) > 1:
        raise ReconstructionError("underdetermined: more than one angle is missing")
    if not holes:
        return tuple(tuple(m) for m in measurements)
    total = math.fsum(a for m in measurements for a in m if a is not None)
    value = (n - 2) * math.pi - total
    if not 0.0 < value < 2 * math.pi:
        raise ReconstructionError("inconsistent measurements: recovered angle out of range")
    (hv, hs), = holes
    return tuple(
        tuple(value if (v, s) == (hv, hs) else a for s, a in enumerate(m)) for v, m in enumerate(measurements)
    )


@dataclass(frozen=True)
class EmbeddedPolygon:
    """Float coordinates normalized so that v_0 = (0, 0) and v_1 = (1, 0)."""

    coords: tuple

    @property
    def n(self) -> int:
        return len(self.coords)


def _triangle_angle(vg: VisibilityGraph, measurements, p: int, q: int, r: int) -> float:
    # CCW angle at p from q to r
    a, b = vg.slot(p, q), vg.slot(p, r)
    if a >= b:
        raise ReconstructionError("inconsistent measurements: triangle is not CCW at its corner")
    return math.fsum(measurements[p][a - 1 : b - 1])


def embed(visgraph: VisibilityGraph, measurements: Sequence[Sequence[float]]) -> EmbeddedPolygon:
    """Lay the polygon out triangle by triangle, starting from v_0 v_1."""
    n = visgraph.n
    tris = triangulate(visgraph)
    by_edge: dict[frozenset, list[int]] = {}
    for idx, tri in enumerate(tris):
        for e in ((tri[0], tri[1]), (tri[1], tri[2]), (tri[2], tri[0])):
            by_edge.setdefault(frozenset(e), []).append(idx)
    pos: dict[int, tuple[float, float]] = {0: (0.0, 0.0), 1: (1.0, 0.0)}
    done = set()
    queue = list(by_edge.get(frozenset((0, 1)), []))
    while queue:
        idx = queue.pop()
        if idx in done:
            continue
        tri = tris[idx]
        unknown = [v for v in tri if v not in pos]
        if len(unknown) == 0:
            done.add(idx)
            continue
        if len(unknown) > 1:
            continue
        # rotate the CCW triple so the unplaced vertex is last
        k = tri.index(unknown[0])
        p, q, r = tri[(k + 1) % 3], tri[(k + 2) % 3], tri[k]
        ap = _triangle_angle(visgraph, measurements, p, q, r)
        aq = _triangle_angle(visgraph, measurements, q, r, p)
        px, py = pos[p]
        qx, qy = pos[q]
        dx, dy = qx - px, qy - py
        scale = math.sin(aq) / math.sin(ap + aq)
        c, s = math.cos(ap), math.sin(ap)
        pos[r] = (px + scale * (c * dx - s * dy), py + scale * (s * dx + c * dy))
        done.add(idx)
        for e in ((p, r), (q, r)):
            queue.extend(j for j in by_edge[frozenset(e)] if j not in done)
    if len(pos) != n or len(done) != len(tris):
        raise ReconstructionError("disconnected triangulation")
    return EmbeddedPolygon(tuple(pos[i] for i in range(n)))
