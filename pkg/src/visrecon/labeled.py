"""Arc-labeled digraphs, polygon labelings and the minimum base graph.

An agent that walks a locally oriented digraph only ever observes labels, so
two pointed graphs are indistinguishable exactly when their label-sequence
languages coincide.  For deterministic labelings that is out-bisimilarity,
and the minimum base graph is the quotient by the coarsest stable partition.
"""

from __future__ import annotations

from collections import deque
from dataclasses import astuple, dataclass
from functools import cached_property
from itertools import product
from typing import Iterable, Iterator, Sequence, Union

from .errors import ExplorationError, GraphError
from .geometry import Polygon, VisibilityGraph, orient


@dataclass(frozen=True, order=True)
class Basic:
    slot: int

    def __str__(self) -> str:
        return f"b{self.slot}"


@dataclass(frozen=True, order=True)
class LookBack:
    out_slot: int
    back_slot: int

    def __str__(self) -> str:
        return f"lb{self.out_slot},{self.back_slot}"


@dataclass(frozen=True, order=True)
class AngleType:
    slot: int
    bits: tuple

    def __str__(self) -> str:
        return f"at{self.slot};{''.join(map(str, self.bits))}"


@dataclass(frozen=True, order=True)
class Generic:
    text: str

    def __str__(self) -> str:
        return f"g{self.text}"


Label = Union[Basic, LookBack, AngleType, Generic]


def label_key(label) -> tuple:
    """Total order across label variants (variant name first)."""
    return (type(label).__name__, astuple(label))


def slot_of(label) -> int | None:
    if isinstance(label, Basic):
        return label.slot
    if isinstance(label, LookBack):
        return label.out_slot
    if isinstance(label, AngleType):
        return label.slot
    return None


def parse_label(text: str) -> Label:
    if text.startswith("lb"):
        a, b = text[2:].split(",")
        return LookBack(int(a), int(b))
    if text.startswith("at"):
        s, bits = text[2:].split(";")
        return AngleType(int(s), tuple(int(c) for c in bits))
    if text.startswith("b"):
        return Basic(int(text[1:]))
    if text.startswith("g"):
        return Generic(text[1:])
    raise GraphError(f"unknown label {text!r}")


@dataclass(frozen=True)
class LabeledDigraph:
    """``arcs[u]`` is the sequence of ``(label, target)`` pairs leaving ``u``."""

    arcs: tuple

    def __post_init__(self):
        object.__setattr__(self, "arcs", tuple(tuple((lab, int(t)) for lab, t in row) for row in self.arcs))

    @property
    def n(self) -> int:
        return len(self.arcs)

    def __len__(self) -> int:
        return len(self.arcs)

    @cached_property
    def _moves(self) -> tuple:
        return tuple(dict(row) for row in self.arcs)

    def out_labels(self, u: int) -> frozenset:
        return frozenset(self._moves[u])

    def target(self, u: int, label) -> int | None:
        return self._moves[u].get(label)

    def walk(self, start: int, labels: Iterable) -> int | None:
        """Node reached by following ``labels`` from ``start`` (None if impossible)."""
        u = start
        for lab in labels:
            u = self._moves[u].get(lab)
            if u is None:
                return None
        return u

    def is_locally_oriented(self) -> bool:
        return all(len(m) == len(row) for m, row in zip(self._moves, self.arcs))

    def is_strongly_connected(self) -> bool:
        if not self.arcs:
            return False
        fwd = [[t for _, t in row] for row in self.arcs]
        rev: list[list[int]] = [[] for _ in self.arcs]
        for u, row in enumerate(fwd):
            for t in row:
                rev[t].append(u)
        return all(len(_reach(adj, 0)) == self.n for adj in (fwd, rev))

    def self_loops(self, u: int) -> int:
        return sum(1 for _, t in self.arcs[u] if t == u)


def _reach(adj, s) -> set:
    seen = {s}
    stack = [s]
    while stack:
        u = stack.pop()
        for t in adj[u]:
            if t not in seen:
                seen.add(t)
                stack.append(t)
    return seen


def basic_labeling(visgraph: VisibilityGraph) -> LabeledDigraph:
    return LabeledDigraph(tuple(tuple((Basic(s + 1), j) for s, j in enumerate(row)) for row in visgraph.incident))


def lookback_labeling(visgraph: VisibilityGraph) -> LabeledDigraph:
    return LabeledDigraph(
        tuple(
            tuple((LookBack(s + 1, visgraph.slot(j, i)), j) for s, j in enumerate(row))
            for i, row in enumerate(visgraph.incident)
        )
    )


def angle_type_bits(polygon: Polygon, visgraph: VisibilityGraph, i: int) -> tuple:
    """Per arc at v_i, bit j is 1 iff the wedge to the j-th arc is reflex.

    The wedge is swept CCW from the lower slot to the higher one, i.e. it is
    the part of the inner angle at v_i between the two sight lines.
    """
    pts = polygon.int_coords
    c = pts[i]
    row = visgraph.incident[i]
    out = []
    for a in range(len(row)):
        bits = []
        for j in range(len(row)):
            lo, hi = min(a, j), max(a, j)
            if lo == hi:
                bits.append(0)
            else:
                bits.append(0 if orient(c, pts[row[lo]], pts[row[hi]]) >= 0 else 1)
        out.append(tuple(bits))
    return tuple(out)


def angle_type_labeling(visgraph: VisibilityGraph, polygon: Polygon) -> LabeledDigraph:
    rows = []
    for i, row in enumerate(visgraph.incident):
        bits = angle_type_bits(polygon, visgraph, i)
        rows.append(tuple((AngleType(s + 1, bits[s]), j) for s, j in enumerate(row)))
    return LabeledDigraph(tuple(rows))


LABELINGS = {"basic", "lookback", "angletype"}


def labeling_by_name(name: str, visgraph: VisibilityGraph, polygon: Polygon | None = None) -> LabeledDigraph:
    if name == "basic":
        return basic_labeling(visgraph)
    if name == "lookback":
        return lookback_labeling(visgraph)
    if name == "angletype":
        if polygon is None:
            raise GraphError("angle-type labeling needs coordinates")
        return angle_type_labeling(visgraph, polygon)
    raise GraphError(f"unknown labeling {name!r}")


@dataclass(frozen=True)
class MinimumBase:
    base: LabeledDigraph
    class_of: tuple
    k: int

    def members(self, c: int) -> list[int]:
        return [v for v, x in enumerate(self.class_of) if x == c]

    def class_sizes(self) -> list[int]:
        return [len(self.members(c)) for c in range(self.k)]


def _refine(g: LabeledDigraph) -> list[int]:
    def renumber(sigs):
        ids: dict = {}
        return [ids.setdefault(s, len(ids)) for s in sigs]

    cls = renumber(tuple(sorted(map(label_key, g.out_labels(u)))) for u in range(g.n))
    while True:
        sigs = [
            (cls[u], tuple(sorted((label_key(lab), cls[t]) for lab, t in g.arcs[u]))) for u in range(g.n)
        ]
        new = renumber(sigs)
        if max(new) == max(cls):
            return new
        cls = new


def minimum_base(g: LabeledDigraph) -> MinimumBase:
    """Quotient of ``g`` by its coarsest partition stable under labeled successors.

    Classes are numbered in order of their smallest member.
    """
    if not g.is_locally_oriented():
        raise GraphError("not locally oriented")
    cls = _refine(g)
    k = max(cls) + 1
    reps: dict[int, int] = {}
    for u, c in enumerate(cls):
        reps.setdefault(c, u)
    rows = tuple(tuple((lab, cls[t]) for lab, t in g.arcs[reps[c]]) for c in range(k))
    return MinimumBase(LabeledDigraph(rows), tuple(cls), k)


def indistinguishable(g1: LabeledDigraph, s1: int, g2: LabeledDigraph, s2: int) -> tuple | None:
    """Shortest label sequence realizable from exactly one of the two start nodes.

    Returns None when both pointed graphs produce the same label sequences.
    Ties between shortest sequences are broken lexicographically.
    """
    start = (s1, s2)
    parent: dict = {start: None}
    queue = deque([start])
    while queue:
        pair = queue.popleft()
        u1, u2 = pair
        l1, l2 = g1.out_labels(u1), g2.out_labels(u2)
        if l1 != l2:
            last = min(l1 ^ l2, key=label_key)
            path = [last]
            while parent[pair] is not None:
                pair, lab = parent[pair]
                path.append(lab)
            return tuple(reversed(path))
        for lab in sorted(l1, key=label_key):
            nxt = (g1.target(u1, lab), g2.target(u2, lab))
            if nxt not in parent:
                parent[nxt] = (pair, lab)
                queue.append(nxt)
    return None


def canonical_form(g: LabeledDigraph, start: int) -> tuple:
    """Relabel nodes in BFS order from ``start`` (labels sorted); unreached nodes are dropped."""
    order = {start: 0}
    queue = deque([start])
    rows = []
    while queue:
        u = queue.popleft()
        row = []
        for lab in sorted(g.out_labels(u), key=label_key):
            t = g.target(u, lab)
            if t not in order:
                order[t] = len(order)
                queue.append(t)
            row.append((label_key(lab), order[t]))
        rows.append(tuple(row))
    return tuple(rows)


def pointed_isomorphic(g1: LabeledDigraph, s1: int, g2: LabeledDigraph, s2: int) -> bool:
    if g1.n != g2.n:
        return False
    return canonical_form(g1, s1) == canonical_form(g2, s2)


def quotient(g: LabeledDigraph, cls: Sequence[int]) -> LabeledDigraph | None:
    """Quotient graph for a class assignment, or None if it is not stable."""
    k = max(cls) + 1
    rows: list = [None] * k
    for u in range(g.n):
        row = tuple(sorted(((lab, cls[t]) for lab, t in g.arcs[u]), key=lambda a: label_key(a[0])))
        c = cls[u]
        if rows[c] is None:
            rows[c] = row
        elif rows[c] != row:
            return None
    return LabeledDigraph(tuple(rows))


def _set_partitions(n: int, compatible) -> Iterator[list[int]]:
    assign = [0] * n

    def rec(u: int, k: int):
        if u == n:
            yield list(assign)
            return
        for c in range(k + 1):
            if c < k and not compatible(u, assign.index(c)):
                continue
            assign[u] = c
            yield from rec(u + 1, max(k, c + 1))

    if n:
        yield from rec(1, 1)


def quotient_candidates(
    g: LabeledDigraph, decoys: Iterable[tuple[LabeledDigraph, int]] = ()
) -> list[tuple[LabeledDigraph, int]]:
    """Every quotient of ``g`` pointed at each of its nodes, plus ``decoys``.

    Enumerates all set partitions, so only use this for small graphs.
    """
    out = []
    seen = set()
    labels = [g.out_labels(u) for u in range(g.n)]
    for cls in _set_partitions(g.n, lambda u, w: labels[u] == labels[w]):
        q = quotient(g, cls)
        if q is None or not q.is_strongly_connected():
            continue
        for v in range(q.n):
            key = canonical_form(q, v)
            if key not in seen:
                seen.add(key)
                out.append((q, v))
    out.extend(decoys)
    return out


def exhaustive_candidates(max_nodes: int, max_degree: int | None = None) -> list[tuple[LabeledDigraph, int]]:
    """All strongly connected pointed graphs with basic-style labels, up to isomorphism.

    Node ``u`` with out-degree ``d`` carries labels Basic(1)..Basic(d), each
    arc going anywhere (self-loops and parallel arcs included).
    """
    max_degree = max_nodes - 1 if max_degree is None else max_degree
    max_degree = max(1, max_degree)
    out = []
    seen = set()
    for size in range(1, max_nodes + 1):
        node_options = [
            tuple((Basic(s + 1), t) for s, t in enumerate(targets))
            for d in range(1, max_degree + 1)
            for targets in product(range(size), repeat=d)
        ]
        for rows in product(node_options, repeat=size):
            g = LabeledDigraph(rows)
            if not g.is_strongly_connected():
                continue
            for v in range(size):
                key = canonical_form(g, v)
                if key not in seen:
                    seen.add(key)
                    out.append((g, v))
    return out


class LabeledEnvironment:
    """Physical side of an exploration: the agent sees out-labels and moves by label."""

    def __init__(self, graph: LabeledDigraph, start: int = 0):
        self.graph = graph
        self.position = start
        self.trace: list = []

    def observe(self) -> frozenset:
        return self.graph.out_labels(self.position)

    def move(self, label) -> None:
        t = self.graph.target(self.position, label)
        if t is None:
            raise ExplorationError(f"invalid move: no arc labeled {label} here")
        self.trace.append(label)
        self.position = t


def _observed_walk(g: LabeledDigraph, u: int, seq) -> tuple[tuple, int]:
    """Follow ``seq`` from ``u`` until a label is missing.

    Returns the out-label sets seen along the way (start included) and the end node.
    """
    seen = [g.out_labels(u)]
    for lab in seq:
        t = g.target(u, lab)
        if t is None:
            break
        u = t
        seen.append(g.out_labels(u))
    return tuple(seen), u


def _merges_starts(pool, seq, forms) -> bool:
    """Would walking ``seq`` make two same-graph candidates with different starts coincide?

    Every survivor is tried as the hypothetical truth, which fixes what the
    agent would observe.  Among the candidates consistent with those
    observations, two pointed copies of one graph sitting on the same node can
    never have their starting points separated again.
    """
    walks = [_observed_walk(g, cur, seq) for g, _, cur in pool]
    for truth, _ in walks:
        seen: dict = {}
        for (h, start, _), (obs, end) in zip(pool, walks):
            if obs != truth:
                continue
            first = forms(h, start)
            if seen.setdefault(forms(h, end), first) != first:
                return True
    return False


def _choose_walk(pool, forms):
    """Distinguishing walk for the first candidate pair that causes no start merge."""
    fallback = None
    for a in range(len(pool)):
        for b in range(a + 1, len(pool)):
            c1, c2 = pool[a], pool[b]
            delta = indistinguishable(c1[0], c1[2], c2[0], c2[2])
            if delta is None:
                return c1, c2, None
            if fallback is None:
                fallback = (c1, c2, delta)
            if not _merges_starts(pool, delta, forms):
                return c1, c2, delta
    return fallback


def agent_explore_minimum_base(
    env, candidates: Iterable[tuple[LabeledDigraph, int]]
) -> tuple[LabeledDigraph, int]:
    """Eliminate candidate pointed graphs until only the minimum base remains.

    ``env`` needs ``observe()`` (current out-label set) and ``move(label)``.
    Each round picks two surviving candidates, computes a label sequence that
    only one of them realizes from its current node, and tries to walk it
    physically; whichever candidate the outcome contradicts is dropped.
    After every round candidates that cannot reproduce the walk so far, or
    disagree with what was observed along it, are dropped too.  Walks that
    would collapse two starting points of one graph onto the same node are
    avoided whenever another pair offers a safe walk.
    """
    pool = []
    for g, v in candidates:
        if not g.is_locally_oriented():
            continue
        if minimum_base(g).k < g.n:
            continue  # a smaller indistinguishable graph exists
        pool.append([g, v, v])  # graph, start, current node after the walk so far
    here = env.observe()
    pool = [c for c in pool if c[0].out_labels(c[2]) == here]
    cache: dict = {}

    def forms(g, v):
        key = (id(g), v)
        if key not in cache:
            cache[key] = canonical_form(g, v)
        return cache[key]

    while len(pool) > 1:
        c1, c2, delta = _choose_walk(pool, forms)
        if delta is None:
            pool.remove(c2)  # both minimal and bisimilar, hence isomorphic
            continue
        if c1[0].walk(c1[2], delta) is None:
            c1, c2 = c2, c1
        executed = []
        for lab in delta:
            if lab not in env.observe():
                break
            env.move(lab)
            executed.append(lab)
        loser = c2 if len(executed) == len(delta) else c1
        pool.remove(loser)
        here = env.observe()
        survivors = []
        for c in pool:
            u = c[0].walk(c[2], executed)
            if u is not None and c[0].out_labels(u) == here:
                c[2] = u
                survivors.append(c)
        pool = survivors
    if not pool:
        raise ExplorationError("candidate exhaustion")
    return pool[0][0], pool[0][1]


def to_text(g: LabeledDigraph) -> str:
    lines = [str(g.n)]
    for row in g.arcs:
        lines.append(" ".join(f"{lab}:{t}" for lab, t in row))
    return "\n".join(lines) + "\n"


def from_text(text: str) -> LabeledDigraph:
    lines = text.strip("\n").split("\n")
    n = int(lines[0])
    rows = []
    for line in lines[1 : n + 1]:
        row = []
        for tok in line.split():
            lab, t = tok.rsplit(":", 1)
            row.append((parse_label(lab), int(t)))
        rows.append(tuple(row))
    if len(rows) != n:
        raise GraphError("truncated labeled digraph")
    return LabeledDigraph(tuple(rows))
