"""Decide whether two polygons can be told apart by a given agent."""

from __future__ import annotations

import math
from dataclasses import dataclass

from .agent import SensorConfig, observationally_equivalent
from .geometry import Polygon, VisibilityGraph, build_visibility_graph


def graphs_isomorphic(g1: VisibilityGraph, g2: VisibilityGraph) -> bool:
    """Equal as CCW-ordered graphs up to a cyclic shift of the boundary labels."""
    n = g1.n
    if n != g2.n:
        return False
    for s in range(n):
        if all(tuple((j + s) % n for j in g1.incident[i]) == g2.incident[(i + s) % n] for i in range(n)):
            return True
    return False


def _normalized(p: Polygon, start: int) -> list[complex]:
    z = [complex(x, y) for x, y in p.float_coords]
    n = len(z)
    a, b = z[start], z[(start + 1) % n]
    return [(z[(start + i) % n] - a) / (b - a) for i in range(n)]


def similar(p1: Polygon, p2: Polygon, tol: float = 1e-9) -> bool:
    """Same shape up to rotation, scaling, translation and relabeling start."""
    if p1.n != p2.n:
        return False
    ref = _normalized(p1, 0)
    scale = max(abs(z) for z in ref)
    for s in range(p2.n):
        other = _normalized(p2, s)
        if all(abs(u - v) <= tol * max(1.0, scale) for u, v in zip(ref, other)):
            return True
    return False


@dataclass(frozen=True)
class AmbiguityReport:
    equivalent: bool
    isomorphic: bool
    similar: bool

    @property
    def ambiguous(self) -> bool:
        return self.equivalent and (not self.isomorphic or not self.similar)

    def lines(self) -> list[str]:
        yn = lambda b: "yes" if b else "no"  # noqa: E731
        return [
            f"equivalent {yn(self.equivalent)}",
            f"isomorphic {yn(self.isomorphic)}",
            f"similar {yn(self.similar)}",
            f"verdict {'AMBIGUOUS' if self.ambiguous else 'DISTINGUISHABLE' if not self.equivalent else 'SAME'}",
        ]


def check_ambiguity(p1: Polygon, p2: Polygon, sensors: SensorConfig, depth: int | None = None) -> AmbiguityReport:
    eq = observationally_equivalent(p1, p2, sensors, depth)
    iso = graphs_isomorphic(build_visibility_graph(p1), build_visibility_graph(p2))
    return AmbiguityReport(eq, iso, similar(p1, p2))
