"""A point agent moving between polygon vertices along sight lines.

At a vertex the agent perceives its incident sight lines in CCW order,
starting with the boundary edge to the next vertex, plus whatever the
configured sensors report.  The environment enforces legal moves and keeps
the full trace; the agent has unbounded memory.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, replace
from typing import Sequence

from .errors import ExplorationError
from .geometry import (
    ANGLE_EPS,
    Polygon,
    VisibilityGraph,
    angle_measurement,
    build_visibility_graph,
    compass_observation,
    distance_observation,
    inner_angle,
)
from .labeled import Generic, LabeledDigraph, angle_type_bits, indistinguishable

SENSOR_NAMES = (
    "angles",
    "angle_types",
    "inner_angle",
    "compass",
    "cvv",
    "distances",
    "look_back",
    "unordered_angles",
)

# readings compared exactly; everything else is a float reading
_EXACT = {"angle_types", "cvv", "look_back"}


@dataclass(frozen=True)
class SensorConfig:
    """Which sensors the agent carries and what it knows initially.

    Degree perception is always on.  ``knowledge`` is ``"n"``, ``"bound"``
    (with ``n_bound``) or ``"none"``.  ``movement`` is ``"free"`` or
    ``"boundary"``.  ``hidden_angles`` lists ``(vertex, slot)`` angle
    readings the angle sensor fails to report.
    """

    angles: bool = False
    angle_types: bool = False
    inner_angle: bool = False
    compass: bool = False
    cvv: bool = False
    distances: bool = False
    look_back: bool = False
    unordered_angles: bool = False
    knowledge: str = "n"
    n_bound: int | None = None
    movement: str = "free"
    hidden_angles: frozenset = frozenset()

    @classmethod
    def parse(cls, text: str, **kw) -> "SensorConfig":
        """Build from a comma list such as ``"angles,lookback"``."""
        flags = {}
        aliases = {"lookback": "look_back", "angletypes": "angle_types", "angle-types": "angle_types",
                   "inner": "inner_angle", "inner-angle": "inner_angle", "unordered": "unordered_angles",
                   "basic": None, "": None}
        for tok in (t.strip().lower() for t in text.split(",")):
            name = aliases.get(tok, tok)
            if name is None:
                continue
            if name not in SENSOR_NAMES:
                raise ValueError(f"unknown sensor {tok!r}")
            flags[name] = True
        return cls(**flags, **kw)

    def enabled(self) -> list[str]:
        return [s for s in SENSOR_NAMES if getattr(self, s)]


@dataclass(frozen=True)
class Observation:
    degree: int
    angles: tuple | None = None
    angle_types: tuple | None = None
    inner_angle: float | None = None
    compass: tuple | None = None
    cvv: tuple | None = None
    distances: tuple | None = None
    look_back: int | None = None
    unordered_angles: tuple | None = None
    marked: bool | None = None

    def matches(self, other: "Observation", tol: float = ANGLE_EPS) -> bool:
        if self.degree != other.degree or self.marked != other.marked:
            return False
        for name in SENSOR_NAMES:
            a, b = getattr(self, name), getattr(other, name)
            if name in _EXACT or a is None or b is None:
                if a != b:
                    return False
            elif not _close(a, b, tol):
                return False
        return True


def _close(a, b, tol) -> bool:
    if isinstance(a, tuple):
        return len(a) == len(b) and all(_close(x, y, tol) for x, y in zip(a, b))
    if a is None or b is None:
        return a is b
    return abs(a - b) <= tol


def cvv(visgraph: VisibilityGraph, i: int) -> tuple:
    """Combinatorial visibility vector: which consecutive visible vertices are boundary neighbors."""
    n = visgraph.n
    row = visgraph.incident[i % n]
    d = len(row)
    bits = [1] * (d + 1)
    for j in range(1, d):
        a, b = row[j - 1], row[j]
        bits[j] = 1 if (b - a) % n in (1, n - 1) else 0
    return tuple(bits)


class PolygonEnvironment:
    """The agent's world: a polygon, its sensors, and the agent's position."""

    def __init__(
        self,
        polygon: Polygon,
        sensors: SensorConfig | None = None,
        *,
        marked: int | None = None,
        start: int = 0,
        visgraph: VisibilityGraph | None = None,
    ):
        self.polygon = polygon
        self.sensors = sensors or SensorConfig()
        self.visgraph = visgraph if visgraph is not None else build_visibility_graph(polygon)
        self.marked = marked
        self.start = start % polygon.n
        self.position = self.start
        self.last_back: int | None = None
        self.trace: list[tuple[Observation, int]] = []
        self._static: dict[int, Observation] = {}

    @property
    def n(self) -> int:
        return self.polygon.n

    def _static_reading(self, i: int) -> Observation:
        obs = self._static.get(i)
        if obs is not None:
            return obs
        s, p, vg = self.sensors, self.polygon, self.visgraph
        kw: dict = {}
        if s.angles or s.unordered_angles:
            angles = angle_measurement(p, i, vg)
            if s.hidden_angles:
                angles = tuple(None if (i, k + 1) in s.hidden_angles else a for k, a in enumerate(angles))
            if s.angles:
                kw["angles"] = angles
            if s.unordered_angles:
                kw["unordered_angles"] = tuple(sorted(a for a in angles if a is not None))
        if s.angle_types:
            kw["angle_types"] = angle_type_bits(p, vg, i)
        if s.inner_angle:
            kw["inner_angle"] = inner_angle(p, i)
        if s.compass:
            kw["compass"] = compass_observation(p, i, vg)
        if s.cvv:
            kw["cvv"] = cvv(vg, i)
        if s.distances:
            kw["distances"] = distance_observation(p, i, vg)
        obs = Observation(degree=vg.degree(i), **kw)
        self._static[i] = obs
        return obs

    def observe(self) -> Observation:
        obs = self._static_reading(self.position)
        extra = {}
        if self.sensors.look_back:
            extra["look_back"] = self.last_back
        if self.marked is not None:
            extra["marked"] = self.position == self.marked
        return replace(obs, **extra) if extra else obs

    def allowed_slots(self) -> list[int]:
        d = self.visgraph.degree(self.position)
        if self.sensors.movement == "boundary":
            return [1, d]
        return list(range(1, d + 1))

    def step(self, slot: int) -> Observation:
        """Move along sight line ``slot`` (1-based) and observe the new vertex."""
        if slot not in self.allowed_slots():
            raise ExplorationError(f"invalid move: slot {slot} at a vertex of degree {self.visgraph.degree(self.position)}")
        before = self.observe()
        u = self.position
        v = self.visgraph.incident[u][slot - 1]
        self.trace.append((before, slot))
        self.position = v
        self.last_back = self.visgraph.slot(v, u)
        return self.observe()

    def reset(self) -> None:
        self.position = self.start
        self.last_back = None
        self.trace.clear()


def identify_targets_via_marked_vertex(env: PolygonEnvironment, i: int) -> dict[int, int]:
    """Map each sight line at v_i to a global index using the recognizable vertex.

    The agent starts at v_0, so its index is known while it walks the
    boundary.  It first finds the marked vertex and the polygon size, then
    for each slot at v_i moves along it and walks the boundary back to the
    marked vertex, counting steps.
    """
    pos = 0  # agent's belief; valid because it only uses boundary moves here
    obs = env.observe()
    while not obs.marked:
        obs = env.step(1)
        pos += 1
    m = pos
    obs = env.step(1)
    n = 1
    while not obs.marked:
        obs = env.step(1)
        n += 1
    pos = m

    def walk_to(target):
        nonlocal pos
        for _ in range((target - pos) % n):
            env.step(1)
        pos = target

    walk_to(i % n)
    result = {}
    for slot in range(1, env.observe().degree + 1):
        obs = env.step(slot)
        count = 0
        while not obs.marked:
            obs = env.step(1)
            count += 1
        result[slot] = (m - count) % n
        pos = m
        walk_to(i % n)
    return result


def boundary_tour_observations(env: PolygonEnvironment, n: int | None = None) -> list[Observation]:
    """Observe at v_0..v_{n-1} via slot-1 moves; the agent ends where it started."""
    if n is None:
        if env.sensors.knowledge != "n":
            raise ExplorationError("boundary tour needs n")
        n = env.n
    out = []
    for _ in range(n):
        out.append(env.observe())
        env.step(1)
    return out


def _label_encoding(polygon: Polygon, sensors: SensorConfig, vg: VisibilityGraph) -> LabeledDigraph:
    env = PolygonEnvironment(polygon, replace(sensors, look_back=False), visgraph=vg)
    rows = []
    for i, row in enumerate(vg.incident):
        obs = env._static_reading(i)
        reading = f"{obs.cvv}|{obs.angle_types}"
        arcs = []
        for s, j in enumerate(row):
            back = vg.slot(j, i) if sensors.look_back else 0
            arcs.append((Generic(f"{s + 1}/{back}/{reading}"), j))
        rows.append(tuple(arcs))
    return LabeledDigraph(tuple(rows))


def label_encodable(sensors: SensorConfig) -> bool:
    floats = ("angles", "inner_angle", "compass", "distances", "unordered_angles")
    return sensors.movement == "free" and not any(getattr(sensors, s) for s in floats)


def observationally_equivalent(
    p1: Polygon, p2: Polygon, sensors: SensorConfig, depth: int | None = None
) -> bool:
    """Do all move sequences (up to ``depth`` moves) produce matching observations?

    Exact readings under free movement are encoded as arc labels and compared
    with :func:`indistinguishable`; otherwise a breadth-first search over
    pairs of agent states compares observations with the angle tolerance.
    """
    if depth is not None and depth < 1:
        raise ValueError("depth must be at least 1")
    vg1, vg2 = build_visibility_graph(p1), build_visibility_graph(p2)
    if label_encodable(sensors):
        g1 = _label_encoding(p1, sensors, vg1)
        g2 = _label_encoding(p2, sensors, vg2)
        return indistinguishable(g1, 0, g2, 0) is None
    e1 = PolygonEnvironment(p1, sensors, visgraph=vg1)
    e2 = PolygonEnvironment(p2, sensors, visgraph=vg2)
    start = (0, None, 0, None)
    seen = {start}
    queue = deque([(start, 0)])
    while queue:
        (u1, b1, u2, b2), dist = queue.popleft()
        for e, u, b in ((e1, u1, b1), (e2, u2, b2)):
            e.position, e.last_back = u, b
        if not e1.observe().matches(e2.observe()):
            return False
        if depth is not None and dist >= depth:
            continue
        for slot in e1.allowed_slots():
            v1 = vg1.incident[u1][slot - 1]
            v2 = vg2.incident[u2][slot - 1]
            nxt = (v1, vg1.slot(v1, u1) if sensors.look_back else None,
                   v2, vg2.slot(v2, u2) if sensors.look_back else None)
            if nxt not in seen:
                seen.add(nxt)
                queue.append((nxt, dist + 1))
    return True


def format_trace(trace: Sequence[tuple[Observation, int]], positions: Sequence[int] | None = None) -> str:
    """Line-oriented log, one line per (observation, move)."""
    lines = []
    for k, (obs, slot) in enumerate(trace):
        parts = [f"step={k}"]
        if positions is not None:
            parts.append(f"vertex={positions[k]}")
        parts.append(f"degree={obs.degree}")
        for name in SENSOR_NAMES:
            val = getattr(obs, name)
            if val is not None:
                parts.append(f"{name}={_fmt(val)}")
        if obs.marked is not None:
            parts.append(f"marked={int(obs.marked)}")
        parts.append(f"move={slot}")
        lines.append(" ".join(parts))
    return "\n".join(lines) + ("\n" if lines else "")


def _fmt(val) -> str:
    if isinstance(val, tuple):
        return "(" + ",".join(_fmt(v) for v in val) + ")"
    if isinstance(val, float):
        return f"{val:.12g}"
    return str(val)
