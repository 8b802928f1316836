"""Cochain complexes and the Chevalley-Eilenberg complex Hom(Λ^• g, V).

A cochain f in C^n is stored as the stacked vector (f(e_phi))_phi with phi
running over the lexicographic wedge basis of Λ^n g, each block holding
the V-coordinates of f(e_phi). Position of (phi, a) is
``lex_index(phi) * dim V + a``.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import comb
from typing import Sequence

from .linalg import BrokenComplexError, Matrix, subquotient
from .lie import Representation, ValidationError, validate_algebra, validate_rep
from .signs import OrderedInjection, lex_basis, lex_index

__all__ = [
    "CochainComplex",
    "CohomologyReport",
    "build_ce",
    "ce_differential",
    "cohomology",
    "euler_characteristic",
]


@dataclass(frozen=True)
class CochainComplex:
    """0 -> C^0 -> C^1 -> ... -> C^{len-1} -> 0 with D_n : C^n -> C^{n+1}."""

    spaces: tuple
    differentials: tuple
    label: str = ""

    def __post_init__(self):
        spaces = tuple(self.spaces)
        diffs = tuple(self.differentials)
        object.__setattr__(self, "spaces", spaces)
        object.__setattr__(self, "differentials", diffs)
        if len(diffs) != max(len(spaces) - 1, 0):
            raise ValueError("need one differential between each pair of consecutive spaces")
        for n, D in enumerate(diffs):
            if D.shape != (spaces[n + 1], spaces[n]):
                raise ValueError(f"D_{n} has shape {D.shape}, expected {(spaces[n + 1], spaces[n])}")
        for n in range(len(diffs) - 1):
            if not (diffs[n + 1] @ diffs[n]).is_zero():
                raise BrokenComplexError(f"D_{n + 1} D_{n} != 0")

    @property
    def length(self) -> int:
        return len(self.spaces)

    def outgoing(self, n: int) -> Matrix:
        if n < len(self.differentials):
            return self.differentials[n]
        return Matrix.zeros(0, self.spaces[n])

    def incoming(self, n: int) -> Matrix:
        if n >= 1:
            return self.differentials[n - 1]
        return Matrix.zeros(self.spaces[0], 0)


@dataclass(frozen=True)
class CohomologyReport:
    dims: tuple
    representatives: tuple

    def serialize(self) -> dict:
        return {"dims": list(self.dims), "representatives": [r.serialize() for r in self.representatives]}


def ce_differential(rep: Representation, n: int) -> Matrix:
    """Matrix of d : C^n(g, V) -> C^{n+1}(g, V).

    Row block psi (an (n+1)-subset, x_i = e_{psi(i)}) receives
      sum_i (-1)^{i+1} x_i f(psi minus i)
      + sum_{i<j} (-1)^{i+j} f([x_i, x_j] ∧ psi minus {i, j}).
    """
    alg = rep.algebra
    d, m = alg.dim, rep.dim
    src = lex_basis(d, n)
    tgt = lex_basis(d, n + 1)
    grid = [[0] * (len(src) * m) for _ in range(len(tgt) * m)]

    def add_block(r_blk: int, c_blk: int, block) -> None:
        for a in range(m):
            row = grid[r_blk * m + a]
            for b in range(m):
                v = block[a][b]
                if v:
                    row[c_blk * m + b] += v

    eye = [[1 if a == b else 0 for b in range(m)] for a in range(m)]
    for r, psi in enumerate(tgt):
        vals = psi.values
        for i in range(n + 1):
            rest = vals[:i] + vals[i + 1:]
            c = lex_index(OrderedInjection(d, rest))
            act = rep.action[vals[i] - 1]
            s = 1 if i % 2 == 0 else -1  # (-1)^{(i+1)+1} with 1-based i
            add_block(r, c, [[s * act[a, b] for b in range(m)] for a in range(m)])
        for i in range(n + 1):
            for j in range(i + 1, n + 1):
                s = 1 if (i + j) % 2 == 0 else -1
                rest = vals[:i] + vals[i + 1:j] + vals[j + 1:]
                br = alg.bracket_basis(vals[i] - 1, vals[j] - 1)
                for k, coef in enumerate(br):
                    if not coef or (k + 1) in rest:
                        continue
                    # e_k ∧ e_rest = (-1)^{#rest below k} e_sorted
                    below = sum(1 for v in rest if v < k + 1)
                    s2 = s if below % 2 == 0 else -s
                    merged = tuple(sorted(rest + (k + 1,)))
                    c = lex_index(OrderedInjection(d, merged))
                    add_block(r, c, [[s2 * coef * eye[a][b] for b in range(m)] for a in range(m)])
    return Matrix(grid, cols=len(src) * m)


def build_ce(rep: Representation, validate: bool = True) -> CochainComplex:
    """The Chevalley-Eilenberg complex, degrees 0..dim g."""
    if validate:
        bad = validate_algebra(rep.algebra)
        if bad:
            raise ValidationError("Jacobi identity fails", bad)
        bad = validate_rep(rep)
        if bad:
            raise ValidationError("not a representation", bad)
    d = rep.algebra.dim
    spaces = [comb(d, n) * rep.dim for n in range(d + 1)]
    diffs = [ce_differential(rep, n) for n in range(d)]
    return CochainComplex(spaces, diffs, label=f"CE({rep.algebra.name},{rep.name})")


def cohomology(c: CochainComplex) -> CohomologyReport:
    dims = []
    reps = []
    for n in range(c.length):
        dim, r = subquotient(c.outgoing(n), c.incoming(n))
        dims.append(dim)
        reps.append(r)
    return CohomologyReport(tuple(dims), tuple(reps))


def euler_characteristic(x: CochainComplex | CohomologyReport | Sequence[int]) -> int:
    if isinstance(x, CochainComplex):
        dims = x.spaces
    elif isinstance(x, CohomologyReport):
        dims = x.dims
    else:
        dims = x
    return sum(v if n % 2 == 0 else -v for n, v in enumerate(dims))
