"""Class structure of minimum bases of polygon labelings.

Classes repeat periodically along the boundary, ears come in whole classes
for look-back labelings, and one class forms a clique whose base node
carries the maximum number of self-loops.  That clique class lets an agent
resolve every arc at its members to a global vertex index.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import GraphError, ReconstructionError
from .geometry import Polygon, VisibilityGraph, build_visibility_graph, cut_ears, is_ear
from .labeled import LabeledDigraph, LookBack, MinimumBase, labeling_by_name, minimum_base, slot_of


@dataclass(frozen=True)
class ClassStructure:
    """Boundary class sequence of a base whose classes repeat every ``k`` vertices.

    ``sequence[x]`` is the class of v_x, v_{x+k}, v_{x+2k}, ...
    """

    k: int
    n: int
    sequence: tuple
    position: dict = field(compare=False)

    @classmethod
    def from_base(cls, base: MinimumBase, n: int | None = None) -> "ClassStructure":
        g = base.base
        start = base.class_of[0]
        seq = [start]
        c = _boundary_successor(g, start)
        while c != start:
            if c in seq or len(seq) > g.n:
                raise GraphError("boundary arcs do not form a cycle over the classes")
            seq.append(c)
            c = _boundary_successor(g, c)
        if len(seq) != base.k:
            raise GraphError("boundary cycle misses some classes")
        n = len(base.class_of) if n is None else n
        if n % base.k:
            raise GraphError(f"class count {base.k} does not divide n={n}")
        return cls(base.k, n, tuple(seq), {c: x for x, c in enumerate(seq)})

    @property
    def repeats(self) -> int:
        return self.n // self.k

    def class_of_vertex(self, i: int) -> int:
        return self.sequence[i % self.k]

    def members(self, c: int) -> list[int]:
        x = self.position[c]
        return list(range(x, self.n, self.k))


def _boundary_successor(g: LabeledDigraph, c: int) -> int:
    for lab, t in g.arcs[c]:
        if slot_of(lab) == 1:
            return t
    raise GraphError("labels carry no slot information")


@dataclass(frozen=True)
class SectorResolution:
    vertex: int
    targets: tuple  # targets[s-1] is the global index reached via slot s

    def as_map(self) -> dict[int, int]:
        return {s + 1: t for s, t in enumerate(self.targets)}


def pentagon_property(visgraph: VisibilityGraph, base: MinimumBase) -> bool:
    """Whenever one vertex of a class is an ear, all of them are."""
    ears = [is_ear(visgraph, i) for i in range(visgraph.n)]
    for c in range(base.k):
        flags = {ears[v] for v in base.members(c)}
        if len(flags) > 1:
            return False
    return True


def ear_by_label_pattern(g: LabeledDigraph, i: int) -> bool:
    """Ear test from look-back labels alone.

    Looks for the boundary arc labeled (1, d') followed by an arc labeled
    (d'-1, 2), d' being the out-degree where the first arc ends.
    """
    for lab, mid in g.arcs[i]:
        if not isinstance(lab, LookBack):
            raise GraphError("ear pattern needs look-back labels")
        d = len(g.arcs[mid])
        if lab != LookBack(1, d):
            continue
        if g.target(mid, LookBack(d - 1, 2)) is not None:
            return True
    return False


def find_clique_class(base: MinimumBase, n: int) -> int:
    """Class whose base node has n/k - 1 self-loops (smallest id on ties)."""
    if n % base.k:
        raise ReconstructionError(f"class count {base.k} does not divide n={n}")
    want = n // base.k - 1
    for c in range(base.k):
        if base.base.self_loops(c) == want:
            return c
    raise ReconstructionError("pentagon premise violated: no class with n/k-1 self-loops")


def infer_n_from_base(base: MinimumBase) -> int:
    return base.k * (max(base.base.self_loops(c) for c in range(base.k)) + 1)


def resolve_clique_vertex_arcs(base: MinimumBase, structure: ClassStructure, n: int, i: int) -> SectorResolution:
    """Global targets of every arc at clique-class vertex ``i``.

    Arcs into the vertex's own class split the slots into sectors; sector t
    holds the vertices strictly between v_{i+tk} and v_{i+(t+1)k}, one per
    class, so an arc into class y in sector t reaches
    v_{i + tk + ((pos(y) - pos(x)) mod k)}.
    """
    k = structure.k
    cx = find_clique_class(base, n)
    if structure.class_of_vertex(i) != cx:
        raise ReconstructionError(f"unsupported vertex: {i} is outside the clique class")
    x = structure.position[cx]
    targets = []
    sector = 0
    for _lab, cy in base.base.arcs[cx]:
        if cy == cx:
            sector += 1
            targets.append((i + sector * k) % n)
        else:
            off = (structure.position[cy] - x) % k
            targets.append((i + sector * k + off) % n)
    if len(set(targets)) != len(targets):
        raise ReconstructionError("sector resolution produced duplicate targets")
    return SectorResolution(i, tuple(targets))


def is_clique(visgraph: VisibilityGraph, vertices) -> bool:
    vs = list(vertices)
    return all(visgraph.has_edge(a, b) for x, a in enumerate(vs) for b in vs[x + 1 :])


@dataclass(frozen=True)
class CutStep:
    n: int
    k: int
    cut_class: int
    removed: tuple  # indices in the graph of this step


def class_cutting(
    visgraph: VisibilityGraph,
    labeling: str = "lookback",
    polygon: Polygon | None = None,
    max_steps: int | None = None,
) -> tuple[list[CutStep], VisibilityGraph]:
    """Repeatedly cut off a whole class of ears until the graph is complete.

    The base is recomputed from scratch after every cut.  Returns the steps
    taken and the final graph.
    """
    steps: list[CutStep] = []
    vg, poly = visgraph, polygon
    while not vg.is_complete():
        if max_steps is not None and len(steps) >= max_steps:
            break
        mb = minimum_base(labeling_by_name(labeling, vg, poly))
        if not pentagon_property(vg, mb):
            raise ReconstructionError("pentagon premise violated during class cutting")
        ear = next(i for i in range(vg.n) if is_ear(vg, i))
        c = mb.class_of[ear]
        removed = tuple(mb.members(c))
        if len(removed) == vg.n:
            break  # every vertex is an ear; nothing smaller to cut to
        if vg.n - len(removed) < 3:
            # only the non-convex quadrilateral: its two ears share a class
            removed = removed[: vg.n - 3]
        vg = cut_ears(vg, removed)
        if poly is not None:
            poly = poly.without(removed)
        steps.append(CutStep(len(mb.class_of), mb.k, c, removed))
    return steps, vg


@dataclass
class StructureReport:
    n: int
    k: int
    class_sizes: list
    pentagon: bool
    clique_class: int | None
    clique_members: list
    clique_verified: bool | None
    inferred_n: int
    resolution: SectorResolution | None
    resolution_matches: bool | None
    note: str = ""

    def lines(self) -> list[str]:
        out = [
            f"n {self.n}",
            f"k {self.k}",
            "class_sizes " + " ".join(map(str, self.class_sizes)),
            f"pentagon {'yes' if self.pentagon else 'no'}",
            f"clique_class {self.clique_class if self.clique_class is not None else '-'}",
            "clique_members " + " ".join(map(str, self.clique_members)),
            f"inferred_n {self.inferred_n}",
        ]
        if self.resolution is not None:
            out.append(f"resolution_vertex {self.resolution.vertex}")
            for s, t in self.resolution.as_map().items():
                out.append(f"  slot {s} -> {t}")
            out.append(f"resolution_matches {'yes' if self.resolution_matches else 'no'}")
        if self.note:
            out.append(f"note {self.note}")
        return out


def structure_report(polygon: Polygon, labeling: str = "lookback") -> StructureReport:
    vg = build_visibility_graph(polygon)
    mb = minimum_base(labeling_by_name(labeling, vg, polygon))
    n = vg.n
    pent = pentagon_property(vg, mb)
    note = "" if pent else f"pentagon property fails under {labeling} labeling"
    try:
        cx = find_clique_class(mb, n)
    except ReconstructionError as exc:
        cx, note = None, note or str(exc)
    members = mb.members(cx) if cx is not None else []
    res = None
    matches = None
    if cx is not None:
        st = ClassStructure.from_base(mb, n)
        i = members[0]
        try:
            res = resolve_clique_vertex_arcs(mb, st, n, i)
            matches = res.targets == vg.incident[i]
        except ReconstructionError as exc:
            note = note or str(exc)
    return StructureReport(
        n=n,
        k=mb.k,
        class_sizes=mb.class_sizes(),
        pentagon=pent,
        clique_class=cx,
        clique_members=members,
        clique_verified=is_clique(vg, members) if cx is not None else None,
        inferred_n=infer_n_from_base(mb),
        resolution=res,
        resolution_matches=matches,
        note=note,
    )
