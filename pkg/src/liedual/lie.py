"""Lie algebras by structure constants, representations, twists and
automorphism pairs.

Basis indices are 1-based in every public signature and serialized form;
internally everything is 0-based.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Mapping, Sequence

from .linalg import Fraction, Matrix, det, inverse, to_fraction

__all__ = [
    "LieAlgebra",
    "Representation",
    "AutomorphismPair",
    "FiniteGroupRep",
    "Violation",
    "ValidationError",
    "validate_algebra",
    "validate_rep",
    "validate_automorphism_pair",
    "validate_group",
    "ad",
    "trace_ad",
    "is_unimodular",
    "twist",
    "contragredient",
    "trivial_rep",
    "adjoint_rep",
    "change_basis",
    "transport_rep",
    "conjugate_rep",
    "direct_sum",
]

ZERO = Fraction(0)


class ValidationError(ValueError):
    def __init__(self, what: str, violations: list):
        self.violations = violations
        super().__init__(f"{what}: {violations[:5]}{' ...' if len(violations) > 5 else ''}")


@dataclass(frozen=True)
class Violation:
    kind: str
    where: tuple
    detail: str = ""

    def serialize(self) -> dict:
        return {"kind": self.kind, "where": list(self.where), "detail": self.detail}


class LieAlgebra:
    """Finite-dimensional Lie algebra given by [e_i, e_j] = sum_k c[i][j][k] e_k.

    ``brackets`` maps 1-based pairs (i, j) with i < j to {k: c}; only nonzero
    constants need to be supplied. The constructor does not check Jacobi,
    see :func:`validate_algebra`.
    """

    def __init__(self, dim: int, brackets: Mapping | None = None, name: str = ""):
        if dim < 0:
            raise ValueError("negative dimension")
        self.dim = dim
        self.name = name
        sparse: dict[tuple[int, int], dict[int, Fraction]] = {}
        for (i, j), vec in (brackets or {}).items():
            if not (1 <= i <= dim and 1 <= j <= dim and 1 <= min(vec or [1]) and max(vec or [1]) <= dim):
                raise ValueError(f"bracket index out of range: ({i},{j}) -> {dict(vec)}")
            if i == j:
                if any(to_fraction(c) for c in vec.values()):
                    raise ValueError(f"[e_{i}, e_{i}] must vanish")
                continue
            sgn = 1
            if i > j:
                i, j, sgn = j, i, -1
            entry = sparse.setdefault((i, j), {})
            for k, c in vec.items():
                c = to_fraction(c) * sgn
                if c:
                    entry[k] = entry.get(k, ZERO) + c
            if not any(entry.values()):
                del sparse[(i, j)]
        self.brackets = {key: {k: c for k, c in v.items() if c} for key, v in sorted(sparse.items())}
        # dense c[i][j] as tuples of length dim, 0-based
        dense = [[(ZERO,) * dim for _ in range(dim)] for _ in range(dim)]
        for (i, j), vec in self.brackets.items():
            row = [ZERO] * dim
            for k, c in vec.items():
                row[k - 1] = c
            dense[i - 1][j - 1] = tuple(row)
            dense[j - 1][i - 1] = tuple(-x for x in row)
        self._dense = dense

    def bracket_basis(self, i: int, j: int) -> tuple:
        """Coordinates of [e_i, e_j] (0-based indices)."""
        return self._dense[i][j]

    def bracket(self, x: Sequence, y: Sequence) -> tuple:
        x = [to_fraction(a) for a in x]
        y = [to_fraction(b) for b in y]
        out = [ZERO] * self.dim
        for i, a in enumerate(x):
            if not a:
                continue
            for j, b in enumerate(y):
                if not b:
                    continue
                ab = a * b
                for k, c in enumerate(self._dense[i][j]):
                    if c:
                        out[k] += ab * c
        return tuple(out)

    def structure_constants(self) -> list:
        return [[list(self._dense[i][j]) for j in range(self.dim)] for i in range(self.dim)]

    def __eq__(self, other):
        return isinstance(other, LieAlgebra) and self.dim == other.dim and self.brackets == other.brackets

    def __hash__(self):
        return hash((self.dim, tuple((k, tuple(sorted(v.items()))) for k, v in self.brackets.items())))

    def __repr__(self):
        return f"LieAlgebra(dim={self.dim}, name={self.name!r}, brackets={len(self.brackets)} nonzero)"

    def serialize(self) -> dict:
        return {
            "dim": self.dim,
            "brackets": [
                {"i": i, "j": j, "k": k, "c": str(c)}
                for (i, j), vec in self.brackets.items()
                for k, c in sorted(vec.items())
            ],
        }


@dataclass(frozen=True, eq=False)
class Representation:
    algebra: LieAlgebra
    dim: int
    action: tuple  # tuple of Matrix, one per basis element of the algebra
    name: str = ""

    def __post_init__(self):
        action = tuple(self.action)
        object.__setattr__(self, "action", action)
        if len(action) != self.algebra.dim:
            raise ValueError(f"need {self.algebra.dim} action matrices, got {len(action)}")
        for m in action:
            if m.shape != (self.dim, self.dim):
                raise ValueError(f"action matrix has shape {m.shape}, expected {(self.dim, self.dim)}")

    def act(self, x: Sequence) -> Matrix:
        """The matrix of x = sum_i x_i e_i acting on V."""
        out = Matrix.zeros(self.dim, self.dim)
        for c, m in zip(x, self.action):
            c = to_fraction(c)
            if c:
                out = out + m.scale(c)
        return out

    def same_action(self, other: "Representation") -> bool:
        return self.dim == other.dim and self.action == other.action

    def serialize(self) -> dict:
        return {"dim": self.dim, "action": [m.serialize() for m in self.action]}


@dataclass(frozen=True)
class AutomorphismPair:
    """A = Ad(g) on the algebra together with the action of g on V."""

    alg_map: Matrix
    mod_map: Matrix
    name: str = ""

    def inverse(self) -> "AutomorphismPair":
        return AutomorphismPair(inverse(self.alg_map), inverse(self.mod_map), self.name + "^-1")

    def serialize(self) -> dict:
        return {"alg_map": self.alg_map.serialize(), "mod_map": self.mod_map.serialize()}


@dataclass(frozen=True)
class FiniteGroupRep:
    dim: int
    elements: tuple
    name: str = field(default="")

    def __post_init__(self):
        object.__setattr__(self, "elements", tuple(self.elements))
        for g in self.elements:
            if g.shape != (self.dim, self.dim):
                raise ValueError(f"group element has shape {g.shape}")

    def serialize(self) -> dict:
        return {"dim": self.dim, "elements": [g.serialize() for g in self.elements]}


def validate_algebra(alg: LieAlgebra) -> list[Violation]:
    """Jacobi identity on all basis triples; empty list means ok."""
    out = []
    d = alg.dim
    basis = [tuple(1 if t == i else 0 for t in range(d)) for i in range(d)]
    for i, j, k in combinations(range(d), 3):
        x, y, z = basis[i], basis[j], basis[k]
        terms = (
            alg.bracket(alg.bracket(x, y), z),
            alg.bracket(alg.bracket(y, z), x),
            alg.bracket(alg.bracket(z, x), y),
        )
        total = [sum(col) for col in zip(*terms)]
        if any(total):
            out.append(Violation("jacobi", (i + 1, j + 1, k + 1), "sum=" + ",".join(map(str, total))))
    return out


def ad(alg: LieAlgebra, i: int) -> Matrix:
    """Matrix of ad(e_i) = [e_i, -] (1-based i); column j is [e_i, e_j]."""
    if not 1 <= i <= alg.dim:
        raise IndexError(f"basis index {i} out of range 1..{alg.dim}")
    cols = [alg.bracket_basis(i - 1, j) for j in range(alg.dim)]
    return Matrix.from_columns(cols, alg.dim)


def trace_ad(alg: LieAlgebra) -> tuple:
    return tuple(sum((alg.bracket_basis(i, j)[j] for j in range(alg.dim)), ZERO) for i in range(alg.dim))


def is_unimodular(alg: LieAlgebra) -> bool:
    return not any(trace_ad(alg))


def validate_rep(rep: Representation) -> list[Violation]:
    """rho([e_i, e_j]) == [rho(e_i), rho(e_j)] for all i < j."""
    out = []
    alg = rep.algebra
    for i, j in combinations(range(alg.dim), 2):
        a, b = rep.action[i], rep.action[j]
        if rep.act(alg.bracket_basis(i, j)) != a @ b - b @ a:
            out.append(Violation("rep", (i + 1, j + 1), "rho([e_i,e_j]) != [rho(e_i),rho(e_j)]"))
    return out


def validate_automorphism_pair(rep: Representation, pair: AutomorphismPair) -> list[Violation]:
    alg = rep.algebra
    d = alg.dim
    A, M = pair.alg_map, pair.mod_map
    if A.shape != (d, d):
        return [Violation("shape", ("alg_map",), f"expected {(d, d)}, got {A.shape}")]
    if M.shape != (rep.dim, rep.dim):
        return [Violation("shape", ("mod_map",), f"expected {(rep.dim, rep.dim)}, got {M.shape}")]
    out = []
    if det(A) == 0:
        out.append(Violation("singular", ("alg_map",)))
    if det(M) == 0:
        out.append(Violation("singular", ("mod_map",)))
    if out:
        return out
    cols = A.columns()
    for i, j in combinations(range(d), 2):
        lhs = alg.bracket(cols[i], cols[j])
        rhs = A.apply(alg.bracket_basis(i, j))
        if lhs != rhs:
            out.append(Violation("automorphism", (i + 1, j + 1), "[Ae_i, Ae_j] != A[e_i, e_j]"))
    Minv = inverse(M)
    for i in range(d):
        if M @ rep.action[i] @ Minv != rep.act(cols[i]):
            out.append(Violation("compatibility", (i + 1,), "M rho(e_i) M^-1 != rho(A e_i)"))
    return out


def validate_group(group: FiniteGroupRep) -> list[Violation]:
    """Closure under products and inverses, identity present."""
    out = []
    elems = list(group.elements)
    members = set(elems)
    if Matrix.identity(group.dim) not in members:
        out.append(Violation("identity", (), "identity element missing"))
    for a, g in enumerate(elems):
        if det(g) == 0:
            out.append(Violation("singular", (a + 1,)))
            continue
        if inverse(g) not in members:
            out.append(Violation("inverse", (a + 1,), "inverse missing"))
        for b, h in enumerate(elems):
            if g @ h not in members:
                out.append(Violation("closure", (a + 1, b + 1), "product missing"))
    return out


def twist(rep: Representation) -> Representation:
    """x ·tw v = x v - Tr(ad x) v."""
    tr = trace_ad(rep.algebra)
    eye = Matrix.identity(rep.dim)
    return Representation(
        rep.algebra,
        rep.dim,
        tuple(m - eye.scale(t) for m, t in zip(rep.action, tr)),
        name=f"tw({rep.name})" if rep.name else "",
    )


def contragredient(rep: Representation) -> Representation:
    """Dual module, (x f)(v) = -f(x v)."""
    return Representation(
        rep.algebra,
        rep.dim,
        tuple(-m.T for m in rep.action),
        name=f"({rep.name})*" if rep.name else "",
    )


def trivial_rep(alg: LieAlgebra, dim: int = 1) -> Representation:
    return Representation(alg, dim, tuple(Matrix.zeros(dim, dim) for _ in range(alg.dim)), name=f"K^{dim}")


def adjoint_rep(alg: LieAlgebra) -> Representation:
    return Representation(alg, alg.dim, tuple(ad(alg, i) for i in range(1, alg.dim + 1)), name="ad")


def change_basis(alg: LieAlgebra, P: Matrix) -> LieAlgebra:
    """The same algebra written in the basis e'_i = sum_j P[j, i] e_j."""
    d = alg.dim
    Pinv = inverse(P)
    cols = P.columns()
    brackets = {}
    for i, j in combinations(range(d), 2):
        v = Pinv.apply(alg.bracket(cols[i], cols[j]))
        if any(v):
            brackets[(i + 1, j + 1)] = {k + 1: c for k, c in enumerate(v) if c}
    return LieAlgebra(d, brackets, name=f"{alg.name}'" if alg.name else "")


def transport_rep(rep: Representation, new_alg: LieAlgebra, P: Matrix) -> Representation:
    """Rewrite ``rep`` over ``change_basis(rep.algebra, P)``."""
    return Representation(new_alg, rep.dim, tuple(rep.act(c) for c in P.columns()), name=rep.name)


def conjugate_rep(rep: Representation, Q: Matrix) -> Representation:
    """Isomorphic module via v -> Q v: action Q rho Q^-1."""
    Qinv = inverse(Q)
    return Representation(rep.algebra, rep.dim, tuple(Q @ m @ Qinv for m in rep.action), name=rep.name)


def direct_sum(a: LieAlgebra, b: LieAlgebra) -> LieAlgebra:
    brackets = {}
    for (i, j), vec in a.brackets.items():
        brackets[(i, j)] = dict(vec)
    off = a.dim
    for (i, j), vec in b.brackets.items():
        brackets[(i + off, j + off)] = {k + off: c for k, c in vec.items()}
    name = f"{a.name}+{b.name}" if a.name and b.name else ""
    return LieAlgebra(a.dim + b.dim, brackets, name=name)
