"""The fixed corpus of algebras, modules, automorphism pairs and finite
groups used by the checks, plus a seeded generator of random valid
(algebra, module) pairs."""
from __future__ import annotations

import random
from fractions import Fraction
from itertools import permutations

from .linalg import Matrix, det, kernel_basis, vstack
from .lie import (
    AutomorphismPair,
    FiniteGroupRep,
    LieAlgebra,
    Representation,
    adjoint_rep,
    change_basis,
    conjugate_rep,
    contragredient,
    direct_sum,
    transport_rep,
    trivial_rep,
    twist,
    validate_algebra,
    validate_rep,
)


def abelian(d: int) -> LieAlgebra:
    return LieAlgebra(d, {}, name=f"ab{d}")


def heisenberg() -> LieAlgebra:
    """[e1, e2] = e3."""
    return LieAlgebra(3, {(1, 2): {3: 1}}, name="heis")


def affine_line() -> LieAlgebra:
    """The non-unimodular 2-dimensional algebra [e1, e2] = e2."""
    return LieAlgebra(2, {(1, 2): {2: 1}}, name="aff")


def sl2() -> LieAlgebra:
    """Basis (h, e, f): [h,e] = 2e, [h,f] = -2f, [e,f] = h."""
    return LieAlgebra(3, {(1, 2): {2: 2}, (1, 3): {3: -2}, (2, 3): {1: 1}}, name="sl2")


def heisenberg_standard(alg: LieAlgebra | None = None) -> Representation:
    """e1 -> E12, e2 -> E23, e3 -> E13 on K^3."""
    alg = alg or heisenberg()

    def E(i, j):
        return Matrix([[1 if (r, c) == (i, j) else 0 for c in range(3)] for r in range(3)])

    return Representation(alg, 3, (E(0, 1), E(1, 2), E(0, 2)), name="heis-std")


def sl2_standard(alg: LieAlgebra | None = None) -> Representation:
    alg = alg or sl2()
    h = Matrix([[1, 0], [0, -1]])
    e = Matrix([[0, 1], [0, 0]])
    f = Matrix([[0, 0], [1, 0]])
    return Representation(alg, 2, (h, e, f), name="sl2-std")


def affine_character(lam, alg: LieAlgebra | None = None) -> Representation:
    """1-dimensional module of [e1,e2]=e2 with e1 acting by lam."""
    alg = alg or affine_line()
    return Representation(alg, 1, (Matrix([[lam]]), Matrix([[0]])), name=f"chi({lam})")


def corpus_algebras() -> list[LieAlgebra]:
    return [abelian(1), abelian(2), abelian(3), heisenberg(), affine_line(), sl2()]


def corpus_modules(alg: LieAlgebra) -> list[Representation]:
    """The corpus modules attached to one algebra (dim V <= 3)."""
    mods = [trivial_rep(alg, 1), trivial_rep(alg, 2)]
    if alg.dim <= 3:
        mods.append(adjoint_rep(alg))
    if alg.name == "heis":
        mods.append(heisenberg_standard(alg))
    if alg.name == "sl2":
        mods.append(sl2_standard(alg))
    if alg.name == "aff":
        mods.append(affine_character(Fraction(1, 2), alg))
        mods.append(affine_character(3, alg))
    return mods


def corpus_pairs() -> list[tuple[LieAlgebra, Representation]]:
    return [(alg, mod) for alg in corpus_algebras() for mod in corpus_modules(alg)]


def corpus_automorphisms() -> list[tuple[Representation, AutomorphismPair]]:
    """Validated automorphism pairs, all with det(alg_map) = 1."""
    out = []
    ab2 = abelian(2)
    out.append((trivial_rep(ab2), AutomorphismPair(Matrix([[0, -1], [1, 0]]), Matrix([[1]]), "rot90")))
    out.append((trivial_rep(ab2, 2), AutomorphismPair(Matrix([[1, 3], [0, 1]]), Matrix([[2, 1], [1, 1]]), "shear")))
    ab3 = abelian(3)
    out.append(
        (trivial_rep(ab3), AutomorphismPair(Matrix([[2, 1, 0], [1, 1, 0], [0, 0, 1]]), Matrix([[1]]), "sl3"))
    )
    h = heisenberg()
    out.append((trivial_rep(h), AutomorphismPair(Matrix.diag([2, Fraction(1, 2), 1]), Matrix([[1]]), "heis-diag")))
    shear = Matrix([[1, 0, 0], [1, 1, 0], [0, 0, 1]])
    out.append((trivial_rep(h), AutomorphismPair(shear, Matrix([[1]]), "heis-shear")))
    out.append((adjoint_rep(h), AutomorphismPair(shear, shear, "heis-shear-ad")))
    s = sl2()
    t = Fraction(3)
    torus = Matrix.diag([1, t * t, 1 / (t * t)])
    out.append((trivial_rep(s), AutomorphismPair(torus, Matrix([[1]]), "sl2-torus")))
    out.append((adjoint_rep(s), AutomorphismPair(torus, torus, "sl2-torus-ad")))
    out.append((sl2_standard(s), AutomorphismPair(torus, Matrix.diag([t, 1 / t]), "sl2-torus-std")))
    weyl = Matrix([[-1, 0, 0], [0, 0, -1], [0, -1, 0]])
    out.append((sl2_standard(s), AutomorphismPair(weyl, Matrix([[0, 1], [-1, 0]]), "sl2-weyl-std")))
    out.append((adjoint_rep(s), AutomorphismPair(weyl, weyl, "sl2-weyl-ad")))
    return out


def scaling_counterexample(d: int = 1, lam=2) -> tuple[Representation, AutomorphismPair]:
    """alg_map = lam * Id on abelian g: a valid pair with det lam^d."""
    return (
        trivial_rep(abelian(d)),
        AutomorphismPair(Matrix.identity(d).scale(lam), Matrix([[1]]), f"scale{lam}"),
    )


def _perm_matrix(perm) -> Matrix:
    n = len(perm)
    return Matrix([[1 if perm[c] == r else 0 for c in range(n)] for r in range(n)])


def corpus_groups() -> list[FiniteGroupRep]:
    return [
        FiniteGroupRep(2, (Matrix.identity(2),), "trivial"),
        FiniteGroupRep(2, (Matrix.identity(2), Matrix([[0, 1], [1, 0]])), "Z2-swap"),
        FiniteGroupRep(1, (Matrix([[1]]), Matrix([[-1]])), "Z2-sign"),
        FiniteGroupRep(3, tuple(_perm_matrix(tuple((i + s) % 3 for i in range(3))) for s in range(3)), "Z3-regular"),
        FiniteGroupRep(3, tuple(_perm_matrix(p) for p in permutations(range(3))), "S3-perm"),
    ]


def _random_fraction(rng: random.Random, num: int = 3, den: int = 3) -> Fraction:
    return Fraction(rng.randint(-num, num), rng.randint(1, den))


def random_invertible(rng: random.Random, n: int, num: int = 3, den: int = 3) -> Matrix:
    while True:
        m = Matrix([[_random_fraction(rng, num, den) for _ in range(n)] for _ in range(n)])
        if det(m) != 0:
            return m


def _characters(alg: LieAlgebra) -> Matrix:
    """Basis (as rows) of linear forms vanishing on [g, g]."""
    d = alg.dim
    rows = [alg.bracket_basis(i, j) for i in range(d) for j in range(i + 1, d)]
    if not rows:
        return Matrix.identity(d)
    return kernel_basis(vstack([Matrix([r]) for r in rows])).T


def random_pair(rng: random.Random, max_dim: int = 4, max_module: int = 3) -> tuple[LieAlgebra, Representation]:
    """A random valid (algebra, module) pair with dim <= max_dim and
    dim V <= max_module.

    Built from the corpus by direct sums, random changes of basis of the
    algebra, and random conjugation / twist / dualization of the module.
    """
    bases = [abelian(1), abelian(2), heisenberg(), affine_line(), sl2()]
    alg = rng.choice(bases)
    while alg.dim < max_dim and rng.random() < 0.5:
        extra = rng.choice([b for b in bases if b.dim + alg.dim <= max_dim] or [abelian(1)])
        if extra.dim + alg.dim > max_dim:
            break
        alg = direct_sum(alg, extra)
    mods = []
    for m in range(1, max_module + 1):
        mods.append(trivial_rep(alg, m))
    if alg.dim <= max_module:
        mods.append(adjoint_rep(alg))
    chars = _characters(alg)
    if chars.rows:
        # direct sums of characters
        for m in range(1, max_module + 1):
            blocks = []
            for _ in range(m):
                coeffs = [rng.randint(-2, 2) for _ in range(chars.rows)]
                blocks.append([sum((c * chars[r, i] for r, c in enumerate(coeffs)), Fraction(0)) for i in range(alg.dim)])
            action = tuple(Matrix.diag([b[i] for b in blocks]) for i in range(alg.dim))
            mods.append(Representation(alg, m, action))
    # embedded sl2 / heisenberg standard modules when present as the first summand
    if alg.name.startswith("sl2"):
        std = sl2_standard()
        mods.append(Representation(alg, 2, tuple(std.action) + tuple(Matrix.zeros(2, 2) for _ in range(alg.dim - 3))))
    if alg.name.startswith("heis"):
        std = heisenberg_standard()
        mods.append(Representation(alg, 3, tuple(std.action) + tuple(Matrix.zeros(3, 3) for _ in range(alg.dim - 3))))
    rep = rng.choice(mods)
    if rep.dim > 0 and rng.random() < 0.7:
        rep = conjugate_rep(rep, random_invertible(rng, rep.dim))
    if rng.random() < 0.3:
        rep = twist(rep)
    if rng.random() < 0.3:
        rep = contragredient(rep)
    if rng.random() < 0.7:
        P = random_invertible(rng, alg.dim, 2, 2)
        new_alg = change_basis(alg, P)
        rep = transport_rep(rep, new_alg, P)
        alg = new_alg
    assert not validate_algebra(alg) and not validate_rep(rep)
    return alg, rep
