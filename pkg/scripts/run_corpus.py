"""Round-trip and class-structure statistics over a generated corpus.

    python scripts/run_corpus.py --count 500 --n-min 4 --n-max 15
"""

import argparse
import time
from collections import Counter
from dataclasses import dataclass

from visrecon.angle_recon import reconstruct_from_angles, reconstruct_unknown_n
from visrecon.generate import corpus, symmetric_corpus
from visrecon.geometry import build_visibility_graph, measure
from visrecon.labeled import lookback_labeling, minimum_base
from visrecon.structure import find_clique_class, infer_n_from_base, pentagon_property


@dataclass(frozen=True)
class CorpusConfig:
    count: int = 500
    n_min: int = 4
    n_max: int = 15
    seed0: int = 1
    symmetric: int = 40


def run(cfg: CorpusConfig) -> None:
    polys = corpus(cfg.count, (cfg.n_min, cfg.n_max), seed0=cfg.seed0)
    polys += symmetric_corpus(cfg.symmetric, seed0=cfg.seed0)
    t0 = time.perf_counter()
    exact = unknown = pent = inferred = 0
    ks = Counter()
    for p in polys:
        vg = build_visibility_graph(p)
        m = measure(p)
        exact += reconstruct_from_angles(m, p.n) == vg
        unknown += reconstruct_unknown_n(iter(m)) == (p.n, vg)
        mb = minimum_base(lookback_labeling(vg))
        ks["k<n" if mb.k < p.n else "k=n"] += 1
        pent += pentagon_property(vg, mb)
        find_clique_class(mb, p.n)
        inferred += infer_n_from_base(mb) == p.n
    total = len(polys)
    print(f"polygons          {total}")
    print(f"round trip        {exact}/{total}")
    print(f"unknown n         {unknown}/{total}")
    print(f"pentagon property {pent}/{total}")
    print(f"inferred n        {inferred}/{total}")
    print(f"bases             {dict(ks)}")
    print(f"elapsed           {time.perf_counter() - t0:.1f}s")


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--count", type=int, default=CorpusConfig.count)
    ap.add_argument("--n-min", type=int, default=CorpusConfig.n_min)
    ap.add_argument("--n-max", type=int, default=CorpusConfig.n_max)
    ap.add_argument("--seed0", type=int, default=CorpusConfig.seed0)
    ap.add_argument("--symmetric", type=int, default=CorpusConfig.symmetric)
    a = ap.parse_args()
    run(CorpusConfig(a.count, a.n_min, a.n_max, a.seed0, a.symmetric))


if __name__ == "__main__":
    main()
