"""Run the candidate-elimination explorer over every small exhaustive instance.

Reports how often the base graph and its pointed start are recovered.  Some
starts cannot be recovered by any strategy: the walk that separates them in
one candidate graph merges them in an indistinguishable twin.
"""

import argparse

from visrecon.labeled import (
    LabeledEnvironment,
    agent_explore_minimum_base,
    exhaustive_candidates,
    minimum_base,
    pointed_isomorphic,
    to_text,
)


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--nodes", type=int, default=3)
    ap.add_argument("--max-degree", type=int, default=2)
    ap.add_argument("--show-failures", action="store_true")
    a = ap.parse_args()
    cands = exhaustive_candidates(a.nodes, max_degree=a.max_degree)
    pointed = graph = 0
    for g, v in cands:
        mb = minimum_base(g)
        env = LabeledEnvironment(g, v)
        got = agent_explore_minimum_base(env, cands)
        hit = pointed_isomorphic(*got, mb.base, mb.class_of[v])
        pointed += hit
        graph += any(pointed_isomorphic(got[0], got[1], mb.base, c) for c in range(mb.k))
        if not hit and a.show_failures:
            print(f"start {v}, walk {' '.join(map(str, env.trace))}\n{to_text(g)}")
    print(f"candidates {len(cands)}  graph recovered {graph}  start recovered {pointed}")


if __name__ == "__main__":
    main()
