"""Ordered injections [k] -> [d], complements, signs and the star operator.

Injections are 1-based, matching [n] = {1, ..., n}. The wedge basis of
Λ^k is ordered lexicographically on injection values; every matrix here
(star, exterior powers) uses that order.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from math import comb

from .linalg import Matrix, det, inverse

__all__ = [
    "OrderedInjection",
    "lex_basis",
    "lex_index",
    "complement",
    "sign",
    "shuffle_sign",
    "star_matrix",
    "exterior_power",
    "check_star_naturality",
    "wedge_sign",
]


@dataclass(frozen=True, order=True)
class OrderedInjection:
    d: int
    values: tuple[int, ...]

    def __post_init__(self):
        vals = tuple(self.values)
        object.__setattr__(self, "values", vals)
        if len(vals) > self.d:
            raise ValueError("k exceeds d")
        if any(v < 1 or v > self.d for v in vals):
            raise ValueError(f"values {vals} outside [1, {self.d}]")
        if any(a >= b for a, b in zip(vals, vals[1:])):
            raise ValueError(f"values {vals} not strictly increasing")

    @property
    def k(self) -> int:
        return len(self.values)

    def __iter__(self):
        return iter(self.values)

    def serialize(self) -> dict:
        return {"d": self.d, "k": self.k, "values": list(self.values)}


@lru_cache(maxsize=None)
def lex_basis(d: int, k: int) -> tuple[OrderedInjection, ...]:
    """All injections [k] -> [d] in lexicographic order of their values."""
    if k < 0 or k > d:
        return ()
    return tuple(OrderedInjection(d, c) for c in combinations(range(1, d + 1), k))


@lru_cache(maxsize=None)
def _index_table(d: int, k: int) -> dict:
    return {phi.values: i for i, phi in enumerate(lex_basis(d, k))}


def lex_index(phi: OrderedInjection) -> int:
    return _index_table(phi.d, phi.k)[phi.values]


def complement(phi: OrderedInjection) -> OrderedInjection:
    taken = set(phi.values)
    return OrderedInjection(phi.d, tuple(i for i in range(1, phi.d + 1) if i not in taken))


def sign(phi: OrderedInjection) -> int:
    """(-1) to the sum of the complement's values."""
    return -1 if sum(complement(phi).values) % 2 else 1


def shuffle_sign(phi: OrderedInjection) -> int:
    """Sign of the permutation (phi, complement(phi)) of [d].

    Equivalently (-1)^(sum_i phi(i) - i); this is the sign with
    e_phi ∧ e_complement = shuffle_sign * e_1 ∧ ... ∧ e_d.
    """
    return -1 if (sum(phi.values) - phi.k * (phi.k + 1) // 2) % 2 else 1


def wedge_sign(first: tuple[int, ...], second: tuple[int, ...]) -> int:
    """Coefficient c with e_first ∧ e_second = c * e_sorted; 0 on repeats.

    Counted by inversions of the concatenation, independently of
    :func:`sign`.
    """
    seq = list(first) + list(second)
    if len(set(seq)) != len(seq):
        return 0
    inv = sum(1 for i in range(len(seq)) for j in range(i + 1, len(seq)) if seq[i] > seq[j])
    return -1 if inv % 2 else 1


@lru_cache(maxsize=None)
def star_matrix(d: int, k: int) -> Matrix:
    """Matrix of ⋆: Λ^k -> Λ^{d-k}, ⋆e_phi = sgn(phi*) e_phi*."""
    if not 0 <= k <= d:
        raise ValueError(f"k={k} outside [0, {d}]")
    rows = comb(d, d - k)
    cols = comb(d, k)
    grid = [[0] * cols for _ in range(rows)]
    for j, phi in enumerate(lex_basis(d, k)):
        c = complement(phi)
        grid[lex_index(c)][j] = sign(c)
    return Matrix(grid, cols=cols)


def exterior_power(a: Matrix, k: int) -> Matrix:
    """Λ^k a: entry (phi, psi) is the minor of a on rows phi, columns psi."""
    if not a.is_square():
        raise ValueError("exterior power of a non-square matrix")
    d = a.rows
    basis = lex_basis(d, k)
    idx = [tuple(v - 1 for v in phi.values) for phi in basis]
    n = len(idx)
    return Matrix(
        [[det(a.submatrix(r, c)) for c in idx] for r in idx],
        cols=n,
    )


def check_star_naturality(a: Matrix, k: int) -> bool:
    """det(a) * Λ^{d-k}((a^-1)^t) ⋆ == ⋆ Λ^k(a), checked exactly."""
    if not a.is_square():
        raise ValueError("matrix must be square")
    d = a.rows
    da = det(a)
    if da == 0:
        raise ValueError("matrix is singular")
    star = star_matrix(d, k)
    lhs = (exterior_power(inverse(a).T, d - k) @ star).scale(da)
    rhs = star @ exterior_power(a, k)
    return lhs == rhs

