"""Search for two lattice polygons a degree-only boundary tour cannot tell apart."""

import argparse
from pathlib import Path

from visrecon.agent import SensorConfig
from visrecon.ambiguity import check_ambiguity
from visrecon.fixtures import find_degree_twin_pair
from visrecon.io import polygon_to_text


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--budget", type=float, default=60.0, help="seconds")
    ap.add_argument("--coord-bound", type=int, default=8)
    ap.add_argument("--out", type=Path, help="directory for twin_a.txt / twin_b.txt")
    a = ap.parse_args()
    pair = find_degree_twin_pair(coord_bound=a.coord_bound, time_budget=a.budget)
    if pair is None:
        print("budget expired without a pair")
        return
    for name, p in zip("ab", pair):
        print(f"polygon {name}: {[(str(x), str(y)) for x, y in p.vertices]}")
        if a.out:
            a.out.mkdir(parents=True, exist_ok=True)
            (a.out / f"twin_{name}.txt").write_text(polygon_to_text(p))
    print("\n".join(check_ambiguity(*pair, SensorConfig(movement="boundary")).lines()))


if __name__ == "__main__":
    main()
