"""Tabulate sgn(phi) * sgn(phi*) against the two candidate closed forms.

    python scripts/sign_survey.py --max-dim 8
"""
import argparse
from collections import Counter

from liedual.signs import complement, lex_basis, shuffle_sign, sign


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-dim", type=int, default=8)
    args = ap.parse_args()
    print(f"{'d':>2} {'k':>2} {'#phi':>5} {'product':>8} {'(-1)^k(d-k)':>12} {'(-1)^d(d+1)/2':>14} {'shuffle ok':>10}")
    for d in range(args.max_dim + 1):
        for k in range(d + 1):
            basis = lex_basis(d, k)
            products = Counter(sign(p) * sign(complement(p)) for p in basis)
            (value,) = products
            shuffle_ok = all(shuffle_sign(p) * shuffle_sign(complement(p)) == (-1) ** (k * (d - k)) for p in basis)
            print(
                f"{d:>2} {k:>2} {len(basis):>5} {value:>+8d} {(-1) ** (k * (d - k)):>+12d} "
                f"{(-1) ** (d * (d + 1) // 2):>+14d} {str(shuffle_ok):>10}"
            )


if __name__ == "__main__":
    main()
