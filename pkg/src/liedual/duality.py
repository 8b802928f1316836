"""Hazewinkel pairing C^k(g, V*) x C^{d-k}(g, V) -> K, its compatibility with
the differentials, duality on cohomology, group equivariance, and the
finite-group invariants/coinvariants comparison.

Pairing: <a, b> = sum_phi a(e_phi)(b(⋆e_phi)).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .ce import build_ce, cohomology
from .linalg import (
    Matrix,
    hstack,
    image_basis,
    inverse,
    kernel_basis,
    kron,
    rank,
    vstack,
)
from .lie import (
    AutomorphismPair,
    FiniteGroupRep,
    Representation,
    ValidationError,
    contragredient,
    is_unimodular,
    twist,
    validate_automorphism_pair,
    validate_group,
)
from .signs import complement, exterior_power, lex_basis, lex_index, sign, wedge_sign

__all__ = [
    "PairingMatrix",
    "SignTable",
    "DegreeReport",
    "DualityReport",
    "NotUnimodularError",
    "NoUniformSignError",
    "dual_module",
    "pairing_matrix",
    "derive_sign_table",
    "verify_complex_duality",
    "cochain_group_action",
    "equivariance_discrepancy",
    "verify_equivariance",
    "invariants",
    "coinvariants",
    "check_invariants_to_coinvariants",
    "wedge_pairing_matrix",
    "wedge_pairing_check",
    "coboundary_perturbation",
]


class NotUnimodularError(ValueError):
    pass


class NoUniformSignError(ValueError):
    pass


@dataclass(frozen=True)
class PairingMatrix:
    degree: int
    gram: Matrix


@dataclass(frozen=True)
class SignTable:
    signs: tuple  # signs[k] = eps_k for <d a, b> = eps_k <a, d b>, a in C^k

    def serialize(self) -> list[int]:
        return list(self.signs)


@dataclass(frozen=True)
class DegreeReport:
    k: int
    dim_dual: int
    dim_primal: int
    gram_rank: int
    chain_sign: int | None
    ok: bool

    def serialize(self) -> dict:
        return {
            "k": self.k,
            "dim_dual": self.dim_dual,
            "dim_primal": self.dim_primal,
            "gram_rank": self.gram_rank,
            "chain_sign": self.chain_sign,
            "ok": self.ok,
        }


@dataclass(frozen=True)
class DualityReport:
    twisted: bool
    degrees: tuple
    sign_table: SignTable
    grams: tuple = field(default=(), compare=False)

    @property
    def ok(self) -> bool:
        return all(r.ok for r in self.degrees)

    def serialize(self) -> dict:
        return {
            "twisted": self.twisted,
            "ok": self.ok,
            "sign_table": self.sign_table.serialize(),
            "degrees": [r.serialize() for r in self.degrees],
        }


def dual_module(rep: Representation, use_twist: bool = False) -> Representation:
    """V* (untwisted) or (V^tw)* (twisted)."""
    return contragredient(twist(rep) if use_twist else rep)


def pairing_matrix(rep: Representation, k: int) -> PairingMatrix:
    """Gram matrix of <-, ->: rows index C^k(g, V*), columns C^{d-k}(g, V).

    Entry ((phi, a), (psi, b)) is sgn(phi*) when psi = phi* and a = b, zero
    otherwise. The action on V plays no role in the form itself.
    """
    d, m = rep.algebra.dim, rep.dim
    if not 0 <= k <= d:
        raise ValueError(f"degree {k} outside [0, {d}]")
    rows = len(lex_basis(d, k)) * m
    cols = len(lex_basis(d, d - k)) * m
    grid = [[0] * cols for _ in range(rows)]
    for phi in lex_basis(d, k):
        c = complement(phi)
        s = sign(c)
        i0, j0 = lex_index(phi) * m, lex_index(c) * m
        for a in range(m):
            grid[i0 + a][j0 + a] = s
    return PairingMatrix(k, Matrix(grid, cols=cols))


def _uniform_sign(lhs: Matrix, rhs: Matrix) -> int | None:
    if lhs == rhs:
        return 1
    if lhs == -rhs:
        return -1
    return None


def derive_sign_table(rep: Representation, use_twist: bool = False) -> SignTable:
    """eps_k with <d a, b> = eps_k <a, d b> for a in C^k(g, V*), b in
    C^{d-k-1}(g, V), checked on every pair of basis cochains."""
    d = rep.algebra.dim
    primal = build_ce(rep)
    dual = build_ce(dual_module(rep, use_twist))
    signs = []
    for k in range(d):
        P_k = pairing_matrix(rep, k).gram
        P_k1 = pairing_matrix(rep, k + 1).gram
        lhs = dual.differentials[k].T @ P_k1
        rhs = P_k @ primal.differentials[d - k - 1]
        eps = _uniform_sign(lhs, rhs)
        if eps is None:
            raise NoUniformSignError(f"no uniform sign in degree {k}")
        if lhs.is_zero():
            eps = 1
        signs.append(eps)
    return SignTable(tuple(signs))


def verify_complex_duality(rep: Representation, use_twist: bool = False) -> DualityReport:
    if not use_twist and not is_unimodular(rep.algebra):
        raise NotUnimodularError("algebra not unimodular")
    d = rep.algebra.dim
    table = derive_sign_table(rep, use_twist)
    h_primal = cohomology(build_ce(rep))
    h_dual = cohomology(build_ce(dual_module(rep, use_twist)))
    degrees = []
    grams = []
    for k in range(d + 1):
        P = pairing_matrix(rep, k).gram
        Ra = h_dual.representatives[k]
        Rb = h_primal.representatives[d - k]
        G = Ra.T @ P @ Rb
        g_rank = rank(G)
        grams.append(G)
        dd, dp = h_dual.dims[k], h_primal.dims[d - k]
        chain = table.signs[k] if k < d else None
        degrees.append(DegreeReport(k, dd, dp, g_rank, chain, dd == dp and g_rank == dd))
    return DualityReport(use_twist, tuple(degrees), table, tuple(grams))


def _module_action(pair: AutomorphismPair, contragredient_side: bool) -> Matrix:
    if contragredient_side:
        return inverse(pair.mod_map).T
    return pair.mod_map


def cochain_group_action(rep: Representation, pair: AutomorphismPair, k: int, *, dual: bool = False) -> Matrix:
    """(g.x)(e_phi) = g(x(A^-1 e_phi)) on C^k coordinates.

    With ``dual`` the module is V* and g acts there by (M^-1)^t.
    """
    bad = validate_automorphism_pair(rep, pair)
    if bad:
        raise ValidationError("invalid automorphism pair", bad)
    lam = exterior_power(inverse(pair.alg_map), k)
    return kron(lam.T, _module_action(pair, dual))


def equivariance_discrepancy(rep: Representation, pair: AutomorphismPair) -> tuple[bool, Fraction | None]:
    """Compare <g a, b> with <a, g^-1 b> in every degree.

    Returns (identity holds, c) where c is the common scalar with
    <g a, b> = c <a, g^-1 b> in all degrees, or None if there is none.
    """
    d = rep.algebra.dim
    inv = pair.inverse()
    factors = set()
    exact = True
    for k in range(d + 1):
        P = pairing_matrix(rep, k).gram
        lhs = cochain_group_action(rep, pair, k, dual=True).T @ P
        rhs = P @ cochain_group_action(rep, inv, d - k)
        if lhs != rhs:
            exact = False
        factors.add(_scalar_ratio(lhs, rhs))
    factor = factors.pop() if len(factors) == 1 else None
    return exact, factor


def _scalar_ratio(lhs: Matrix, rhs: Matrix) -> Fraction | None:
    ratio = None
    for i in range(lhs.rows):
        for j in range(lhs.cols):
            a, b = lhs[i, j], rhs[i, j]
            if b == 0:
                if a != 0:
                    return None
                continue
            r = a / b
            if ratio is None:
                ratio = r
            elif r != ratio:
                return None
    return ratio


def verify_equivariance(rep: Representation, pair: AutomorphismPair) -> bool:
    return equivariance_discrepancy(rep, pair)[0]


def invariants(group: FiniteGroupRep) -> Matrix:
    """Basis (columns) of V^G."""
    _check_group(group)
    n = group.dim
    eye = Matrix.identity(n)
    if not group.elements:
        return eye
    return kernel_basis(vstack([g - eye for g in group.elements], cols=n))


def coinvariants(group: FiniteGroupRep) -> tuple[int, Matrix]:
    """dim V_G and a projection V -> V_G (coordinates in V_G).

    V_G is represented by the standard basis vectors that extend a basis of
    the augmentation image greedily; the projection reads off their
    coordinates.
    """
    _check_group(group)
    n = group.dim
    eye = Matrix.identity(n)
    aug = image_basis(hstack([g - eye for g in group.elements], rows=n)) if group.elements else Matrix.zeros(n, 0)
    basis = list(aug.columns())
    chosen = []
    for j in range(n):
        e = eye.column_vector(j)
        trial = Matrix.from_columns(basis + [e], n)
        if rank(trial) > len(basis):
            basis.append(e)
            chosen.append(len(basis) - 1)
    B = Matrix.from_columns(basis, n)
    Binv = inverse(B) if n else B
    proj = Binv.submatrix(chosen, range(n))
    return len(chosen), proj


def check_invariants_to_coinvariants(group: FiniteGroupRep) -> bool:
    """V^G -> V -> V_G is an isomorphism."""
    inv = invariants(group)
    dim, proj = coinvariants(group)
    if inv.cols != dim:
        return False
    composite = proj @ inv
    return rank(composite) == dim


def _check_group(group: FiniteGroupRep) -> None:
    bad = validate_group(group)
    if bad:
        raise ValidationError("not a group", bad)


def wedge_pairing_matrix(d: int, k: int, m: int = 1) -> Matrix:
    """Λ^k x Λ^{d-k} -> Λ^d = K via e_1∧...∧e_d -> 1, tensored with the
    evaluation pairing on an m-dimensional coefficient space."""
    rows, cols = lex_basis(d, k), lex_basis(d, d - k)
    W = Matrix([[wedge_sign(p.values, q.values) for q in cols] for p in rows], cols=len(cols))
    return kron(W, Matrix.identity(m))


def wedge_pairing_check(d: int, k: int, rep: Representation) -> tuple[bool, int | None]:
    """Compare the pairing with the wedge pairing for a trivial module.

    Returns (agrees, s) with pairing == s * wedge for a single global sign s.
    """
    if any(not m.is_zero() for m in rep.action):
        raise ValueError("wedge pairing check needs a trivial action")
    if rep.algebra.dim != d:
        raise ValueError("dimension mismatch")
    P = pairing_matrix(rep, k).gram
    W = wedge_pairing_matrix(d, k, rep.dim)
    s = _uniform_sign(P, W)
    return s is not None, s


def coboundary_perturbation(rep: Representation, use_twist: bool, k: int, seed_vectors) -> tuple[Matrix, Matrix]:
    """Representatives shifted by coboundaries; used to check that the
    induced pairing on cohomology does not depend on the choice."""
    d = rep.algebra.dim
    primal = build_ce(rep)
    dual = build_ce(dual_module(rep, use_twist))
    Ra = cohomology(dual).representatives[k]
    Rb = cohomology(primal).representatives[d - k]

    def shift(R: Matrix, cx, deg: int) -> Matrix:
        if deg == 0 or R.cols == 0:
            return R
        D = cx.differentials[deg - 1]
        cols = []
        for j, col in enumerate(R.columns()):
            v = seed_vectors(D.cols, j)
            cols.append(tuple(a + b for a, b in zip(col, D.apply(v))))
        return Matrix.from_columns(cols, R.rows)

    return shift(Ra, dual, k), shift(Rb, primal, d - k)
