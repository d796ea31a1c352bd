import math
from collections import Counter

import pytest

from visrecon.angle_recon import (
    PartialVisibility,
    angle_between,
    decide_edge,
    embed,
    fill_missing_angle,
    iter_reconstruction,
    reconstruct_from_angles,
    reconstruct_unknown_n,
)
from visrecon.errors import ReconstructionError
from visrecon.fixtures import P5, PINWHEEL8, SQUARE, TRIANGLE, convex_polygon, polygon
from visrecon.geometry import VisibilityGraph, build_visibility_graph, measure, measure_coords
from oracles import floats, normalized

QUARTER = math.pi / 4


def ccw(poly, c, u, w):
    pts = floats(poly)
    a = math.atan2(pts[u][1] - pts[c][1], pts[u][0] - pts[c][0])
    b = math.atan2(pts[w][1] - pts[c][1], pts[w][0] - pts[c][0])
    return (b - a) % (2 * math.pi)


def partial_at_step(m, n, k):
    for part in iter_reconstruction(m, n):
        if part.k == k:
            return part
    raise AssertionError


class TestAngleBetween:
    def test_full(self):
        assert angle_between((QUARTER, QUARTER), 1, 3) == pytest.approx(math.pi / 2)

    def test_single(self):
        assert angle_between((QUARTER, QUARTER), 1, 2) == pytest.approx(QUARTER)

    def test_p5_inner(self):
        m = measure(P5)[0]
        assert angle_between(m, 1, 4) == pytest.approx(ccw(P5, 0, 1, 4))
        assert angle_between(m, 1, 4) == pytest.approx(math.pi / 2)

    @pytest.mark.parametrize("a,b", [(0, 2), (2, 2), (3, 1), (1, 4)])
    def test_bad_slots(self, a, b):
        with pytest.raises(ReconstructionError, match="invalid edge slot"):
            angle_between((QUARTER, QUARTER), a, b)


class TestDecideEdge:
    def test_convex_all_true(self):
        p = convex_polygon(7)
        m = measure(p)
        part = partial_at_step(m, 7, 1)
        assert all(decide_edge(part, m, i) for i in range(7))

    def test_p5_blocked_pair(self):
        m = measure(P5)
        part = partial_at_step(m, 5, 1)
        # angles read straight from coordinates: v2 from v3 to v0, v4 from v1 to v3, v3 from v4 to v2
        expected = ccw(P5, 2, 3, 0) + ccw(P5, 4, 1, 3) + ccw(P5, 3, 4, 2)
        (got,) = part.triangle_sums(2, 2)
        assert got == pytest.approx(expected, abs=1e-12)
        # the middle angle is the reflex inner angle at v3, so the sum overshoots pi
        assert expected > math.pi + 1e-3
        assert decide_edge(part, m, 2) is False

    def test_p5_visible_pair(self):
        m = measure(P5)
        part = partial_at_step(m, 5, 1)
        expected = ccw(P5, 0, 1, 2) + ccw(P5, 2, 0, 1) + ccw(P5, 1, 2, 0)
        assert expected == pytest.approx(math.pi, abs=1e-12)
        assert decide_edge(part, m, 0) is True

    def test_check_all_agrees(self, corpus_200):
        for p in corpus_200[:50]:
            assert reconstruct_from_angles(measure(p), p.n, check_all=True) == build_visibility_graph(p)

    def test_inconsistent(self):
        # degrees claim far more sight lines than the chain can support
        bad = ((0.3, 0.3, 0.3), (0.3,), (0.3, 0.3, 0.3), (0.3,), (0.3, 0.3, 0.3))
        with pytest.raises(ReconstructionError, match="inconsistent measurements"):
            reconstruct_from_angles(bad, 5)


class TestReconstruct:
    def test_square(self):
        assert reconstruct_from_angles(((QUARTER, QUARTER),) * 4, 4) == VisibilityGraph.complete(4)

    def test_triangle(self):
        assert reconstruct_from_angles(measure(TRIANGLE), 3) == VisibilityGraph.complete(3)

    def test_p5(self):
        g = reconstruct_from_angles(measure(P5), 5)
        assert g == build_visibility_graph(P5)
        assert frozenset((2, 4)) not in g.edges()
        assert g.edge_count() == 9

    def test_invalid_size(self):
        with pytest.raises(ReconstructionError, match="invalid size"):
            reconstruct_from_angles(((1.0,), (1.0,)), 2)

    def test_monotone_steps(self, corpus_200):
        for p in corpus_200[:40]:
            truth = build_visibility_graph(p).edges()
            n = p.n
            prev = frozenset()
            for part in iter_reconstruction(measure(p), n):
                e = part.edge_set()
                assert prev <= e
                want = {x for x in truth if min((max(x) - min(x)), n - (max(x) - min(x))) <= part.k}
                assert e == want
                if part.k == 1:
                    assert e == {frozenset((i, (i + 1) % n)) for i in range(n)}
                prev = e

    def test_counters(self):
        part = partial_at_step(measure(P5), 5, 1)
        assert isinstance(part, PartialVisibility)
        assert part.right_count(0, 2) == 1
        assert part.left_count(4, 2) == 1


class TestUnknownN:
    def test_triangle(self):
        assert reconstruct_unknown_n(iter(measure(TRIANGLE))) == (3, VisibilityGraph.complete(3))

    def test_square_consumes_four(self):
        pulled = []

        def stream():
            for m in measure(SQUARE):
                pulled.append(m)
                yield m

        n, g = reconstruct_unknown_n(stream())
        assert (n, g) == (4, VisibilityGraph.complete(4))
        assert len(pulled) == 4

    def test_p5(self):
        m = measure(P5)
        assert reconstruct_unknown_n(iter(m)) == (5, reconstruct_from_angles(m, 5))

    def test_premature(self):
        with pytest.raises(ReconstructionError, match="stream ended prematurely"):
            reconstruct_unknown_n(iter(measure(P5)[:2]))


class TestFillMissing:
    def test_square(self):
        m = [list(r) for r in measure(SQUARE)]
        m[2][1] = None
        out = fill_missing_angle(m, 4)
        assert out[2][1] == pytest.approx(QUARTER, abs=1e-12)

    def test_triangle(self):
        m = [list(r) for r in measure(TRIANGLE)]
        m[0][0] = None
        out = fill_missing_angle(m, 3)
        assert sum(x for r in out for x in r) == pytest.approx(math.pi, abs=1e-12)

    def test_p5_reflex_vertex(self):
        orig = measure(P5)
        for s in range(len(orig[3])):
            m = [list(r) for r in orig]
            m[3][s] = None
            assert fill_missing_angle(m)[3][s] == pytest.approx(orig[3][s], abs=1e-9)

    def test_two_missing(self):
        m = [list(r) for r in measure(P5)]
        m[0][0] = m[3][1] = None
        with pytest.raises(ReconstructionError, match="underdetermined"):
            fill_missing_angle(m)


class TestEmbed:
    def test_square(self):
        e = embed(VisibilityGraph.complete(4), ((QUARTER, QUARTER),) * 4)
        flat = [c for xy in e.coords for c in xy]
        assert flat == pytest.approx([0, 0, 1, 0, 1, 1, 0, 1])

    def test_equilateral(self):
        e = embed(VisibilityGraph.complete(3), ((math.pi / 3,),) * 3)
        assert e.coords[2] == pytest.approx((0.5, math.sqrt(3) / 2))

    def test_p5_similar(self):
        g = build_visibility_graph(P5)
        e = embed(g, measure(P5))
        for a, b in zip(normalized(e.coords), normalized(floats(P5))):
            assert abs(a - b) < 1e-6

    def test_fixed_point(self, corpus_200):
        for p in corpus_200[:50]:
            g = build_visibility_graph(p)
            m = measure(p)
            again = measure_coords(embed(g, m).coords, g)
            for r1, r2 in zip(again, m):
                assert r1 == pytest.approx(r2, abs=1e-6)


def test_mirror_keeps_unordered_angles_but_changes_graph():
    p, q = PINWHEEL8, PINWHEEL8.mirrored()
    mp, mq = measure(p), measure(q)
    for a, b in zip(mp, mq):
        assert Counter(round(x, 9) for x in a) == Counter(round(x, 9) for x in b)
    gp, gq = build_visibility_graph(p), build_visibility_graph(q)
    assert gp != gq
    assert reconstruct_from_angles(mp, 8) != reconstruct_from_angles(mq, 8)


def test_deep_pocket_vertex_is_isolated():
    p = polygon([(0, -10), (1, 0), (10, 1), (10, 2), (-10, 2), (-10, 1), (-1, 0)])
    assert build_visibility_graph(p).incident[0] == (1, 6)
