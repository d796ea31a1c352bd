"""Hypothesis properties over generated polygons and random labeled graphs."""

import math
import random
from fractions import Fraction

from hypothesis import assume, given
from hypothesis import strategies as st

from visrecon.agent import PolygonEnvironment, SensorConfig
from visrecon.angle_recon import embed, reconstruct_from_angles, reconstruct_unknown_n
from visrecon.generate import generate_polygon, generate_symmetric_polygon
from visrecon.geometry import (
    build_visibility_graph,
    cut_ears,
    inner_angle,
    is_ear,
    measure,
    measure_coords,
    sees,
    triangulate,
)
from visrecon.io import measurements_from_text, measurements_to_text, polygon_from_text, polygon_to_text
from visrecon.labeled import (
    Basic,
    LabeledDigraph,
    basic_labeling,
    indistinguishable,
    lookback_labeling,
    minimum_base,
)
from visrecon.structure import ear_by_label_pattern, find_clique_class, infer_n_from_base, is_clique, pentagon_property
from oracles import oracle_incident, triangulation_ok, view_classes

polygons = st.builds(
    lambda n, seed: generate_polygon(n, seed, coord_bound=256),
    st.integers(min_value=3, max_value=12),
    st.integers(min_value=0, max_value=2**32),
)
symmetric = st.builds(
    lambda fold, m, seed: generate_symmetric_polygon(fold * m, fold, seed, coord_bound=32),
    st.sampled_from([2, 4]),
    st.integers(min_value=2, max_value=4),
    st.integers(min_value=0, max_value=2**20),
)
any_polygon = st.one_of(polygons, symmetric)


@st.composite
def labeled_graphs(draw):
    n = draw(st.integers(min_value=1, max_value=6))
    rows = []
    for _ in range(n):
        d = draw(st.integers(min_value=1, max_value=3))
        targets = draw(st.lists(st.integers(0, n - 1), min_size=d, max_size=d))
        rows.append(tuple((Basic(s + 1), t) for s, t in enumerate(targets)))
    g = LabeledDigraph(tuple(rows))
    assume(g.is_strongly_connected())
    return g


@given(polygons)
def test_visibility_graph_shape(p):
    g = build_visibility_graph(p)
    n = p.n
    assert n <= g.edge_count() <= n * (n - 1) // 2
    for i in range(n):
        row = g.incident[i]
        assert row[0] == (i + 1) % n and row[-1] == (i - 1) % n
        assert len(row) >= 2
        for j in row:
            assert i in g.incident[j]


@given(polygons, st.data())
def test_sees_symmetric(p, data):
    i = data.draw(st.integers(0, p.n - 1))
    j = data.draw(st.integers(0, p.n - 1))
    assume(i != j)
    assert sees(p, i, j) == sees(p, j, i)


@given(polygons)
def test_matches_shapely_oracle(p):
    assert build_visibility_graph(p).incident == oracle_incident(p)


@given(polygons)
def test_inner_angle_sum(p):
    assert abs(math.fsum(inner_angle(p, i) for i in range(p.n)) - (p.n - 2) * math.pi) < 1e-9


@given(polygons)
def test_triangulation(p):
    g = build_visibility_graph(p)
    assert triangulation_ok(p.n, triangulate(g), g.edges())


@given(polygons, st.randoms(use_true_random=False))
def test_cut_ears_matches_geometry(p, rnd):
    g = build_visibility_graph(p)
    ears = [i for i in range(p.n) if is_ear(g, i)]
    rnd.shuffle(ears)
    chosen: set = set()
    for e in ears:
        if (e - 1) % p.n not in chosen and (e + 1) % p.n not in chosen and len(chosen) + 1 < p.n - 2:
            chosen.add(e)
    assume(chosen)
    assert cut_ears(g, chosen) == build_visibility_graph(p.without(chosen))


@given(any_polygon)
def test_angle_round_trip(p):
    m = measure(p)
    g = build_visibility_graph(p)
    assert reconstruct_from_angles(m, p.n) == g
    assert reconstruct_unknown_n(iter(m)) == (p.n, g)


@given(polygons)
def test_embedding_fixed_point(p):
    g = build_visibility_graph(p)
    m = measure(p)
    again = measure_coords(embed(g, m).coords, g)
    assert all(abs(a - b) <= 1e-6 for r1, r2 in zip(again, m) for a, b in zip(r1, r2))


@given(labeled_graphs())
def test_minimum_base_matches_views(g):
    mb = minimum_base(g)
    assert list(mb.class_of) == view_classes(g.arcs)
    again = minimum_base(mb.base)
    assert again.k == mb.k


@given(labeled_graphs(), st.randoms(use_true_random=False))
def test_class_iff_indistinguishable(g, rnd):
    mb = minimum_base(g)
    u, w = rnd.randrange(g.n), rnd.randrange(g.n)
    assert (indistinguishable(g, u, g, w) is None) == (mb.class_of[u] == mb.class_of[w])


@given(labeled_graphs(), st.randoms(use_true_random=False))
def test_quotient_replay(g, rnd):
    mb = minimum_base(g)
    u = rnd.randrange(g.n)
    c = mb.class_of[u]
    for _ in range(12):
        lab, u = rnd.choice(g.arcs[u])
        c = mb.base.target(c, lab)
        assert c == mb.class_of[u]


@given(any_polygon)
def test_class_sizes_divide(p):
    vg = build_visibility_graph(p)
    for g in (basic_labeling(vg), lookback_labeling(vg)):
        mb = minimum_base(g)
        assert p.n % mb.k == 0
        assert set(mb.class_sizes()) == {p.n // mb.k}


@given(any_polygon)
def test_lookback_structure(p):
    vg = build_visibility_graph(p)
    g = lookback_labeling(vg)
    mb = minimum_base(g)
    assert pentagon_property(vg, mb)
    assert is_clique(vg, mb.members(find_clique_class(mb, p.n)))
    assert infer_n_from_base(mb) == p.n
    assert all(ear_by_label_pattern(g, i) == is_ear(vg, i) for i in range(p.n))


@given(polygons, st.integers(0, 2**16))
def test_lookback_returns_to_previous(p, seed):
    rng = random.Random(seed)
    env = PolygonEnvironment(p, SensorConfig(look_back=True))
    for _ in range(10):
        u = env.position
        obs = env.step(rng.randint(1, env.observe().degree))
        env.step(obs.look_back)
        assert env.position == u


@given(polygons, st.lists(st.integers(1, 20), max_size=12))
def test_replay_determinism(p, moves):
    def run():
        env = PolygonEnvironment(p, SensorConfig(angles=True, cvv=True, look_back=True))
        for m in moves:
            env.step((m - 1) % env.observe().degree + 1)
        return env.trace

    assert run() == run()


@given(
    st.lists(
        st.tuples(st.fractions(max_denominator=10**6), st.fractions(max_denominator=10**6)),
        min_size=3,
        max_size=12,
        unique=True,
    )
)
def test_polygon_text_round_trip(pts):
    from visrecon.geometry import Polygon

    p = Polygon(tuple((Fraction(x), Fraction(y)) for x, y in pts))
    assert polygon_from_text(polygon_to_text(p)) == p


@given(st.lists(st.lists(st.floats(min_value=1e-6, max_value=6.28), min_size=1, max_size=6), min_size=3, max_size=8))
def test_measurement_text_round_trip(rows):
    m = tuple(tuple(r) for r in rows)
    assert measurements_from_text(measurements_to_text(m)) == m
