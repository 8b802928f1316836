"""Cohomology, unimodularity and duality verdicts over the corpus.

    python scripts/betti_survey.py [--random N --seed S]
"""
import argparse
import random

from liedual.ce import build_ce, cohomology
from liedual.corpus import corpus_pairs, random_pair
from liedual.duality import verify_complex_duality
from liedual.lie import is_unimodular, trace_ad


def describe(alg, rep) -> str:
    h = cohomology(build_ce(rep)).dims
    twisted = not is_unimodular(alg)
    report = verify_complex_duality(rep, use_twist=twisted)
    tr = ",".join(str(t) for t in trace_ad(alg))
    return (
        f"{alg.name or '?':<14} {rep.name or '?':<12} d={alg.dim} dimV={rep.dim} tr=({tr}) "
        f"H={h} dual={'tw' if twisted else 'plain'} signs={report.sign_table.serialize()} ok={report.ok}"
    )


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--random", type=int, default=0, help="also survey N random pairs")
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    for alg, rep in corpus_pairs():
        print(describe(alg, rep))
    rng = random.Random(args.seed)
    for _ in range(args.random):
        print(describe(*random_pair(rng)))


if __name__ == "__main__":
    main()
