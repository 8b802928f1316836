"""Lubin-Tate tables: the group law, [u], psi on monomials, Herr dimensions.

    python scripts/lt_tables.py --p 2 --q 2 --N 8 --u 3
"""
import argparse
from fractions import Fraction

from liedual.ce import cohomology
from liedual.lubin_tate import (
    LTContext,
    TruncatedSeries,
    bracket_a,
    bracket_pi,
    formal_group_law,
    herr_complex,
    psi,
    psi_exact_degree,
)


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--p", type=int, default=2)
    ap.add_argument("--q", type=int, default=None)
    ap.add_argument("--pi", type=Fraction, default=None)
    ap.add_argument("--N", type=int, default=8)
    ap.add_argument("--u", type=Fraction, default=None, help="unit for gamma (default p + 1)")
    ap.add_argument("--herr-levels", type=int, nargs="*", default=[4, 6, 8, 12])
    args = ap.parse_args()
    ctx = LTContext(args.p, args.q, args.pi, args.N)
    if args.u is None:
        args.u = Fraction(args.p + 1)
    print(f"context {ctx.serialize()}")
    print(f"[pi](T) = {bracket_pi(ctx)}")
    print(f"[{args.u}](T) = {bracket_a(ctx, args.u)}")
    F = formal_group_law(ctx)
    for n in range(1, ctx.N):
        layer = F.layer(n)
        if layer:
            print(f"F degree {n}: " + " + ".join(f"({c}) X^{i} Y^{j}" for (i, j), c in sorted(layer.items())))
    print(f"psi exact on deg <= {psi_exact_degree(ctx)}")
    for j in range(ctx.N):
        print(f"psi(T^{j}) = {psi(ctx, TruncatedSeries.monomial(ctx, j))}")
    for N in args.herr_levels:
        dims = cohomology(herr_complex(LTContext(ctx.p, ctx.q, ctx.pi, N), args.u)).dims
        print(f"Herr N={N:>2} u={args.u}: dims {dims}")


if __name__ == "__main__":
    main()
