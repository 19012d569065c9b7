"""Tally alpha^n verdicts on random triples.

    python scripts/alpha_survey.py --count 40 --seed 7 --max-dim 3
"""
import argparse
import random
import time
from collections import Counter
from dataclasses import dataclass

from shukla.homology import compare
from shukla.library import random_triple
from shukla.scalars import FieldSpec


@dataclass
class SurveyConfig:
    count: int = 30
    seed: int = 0
    max_dim: int = 3
    N: int = 4
    fields: tuple = ("Q", "Fp:5")


def survey(cfg: SurveyConfig):
    tally = {n: Counter() for n in range(cfg.N)}
    rng = random.Random(cfg.seed)
    for i in range(cfg.count):
        field = FieldSpec.parse(cfg.fields[i % len(cfg.fields)])
        A, R, M = random_triple(rng, field, cfg.max_dim)
        for e in compare(A, R, M, N=cfg.N).entries:
            tally[e.n][e.verdict()] += 1
    return tally


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--count", type=int, default=30)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--max-dim", type=int, default=3)
    ap.add_argument("--n", type=int, default=4)
    a = ap.parse_args()
    cfg = SurveyConfig(a.count, a.seed, a.max_dim, a.n)
    t0 = time.perf_counter()
    tally = survey(cfg)
    kinds = ["iso", "mono", "epi", "neither"]
    print("n  " + "  ".join(f"{k:>7}" for k in kinds))
    for n, c in tally.items():
        print(f"{n}  " + "  ".join(f"{c[k]:>7}" for k in kinds))
    print(f"{cfg.count} triples in {time.perf_counter() - t0:.1f}s")


if __name__ == "__main__":
    main()
