import random
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from liedual.ce import build_ce, cohomology
from liedual.corpus import (
    abelian,
    affine_line,
    corpus_automorphisms,
    corpus_groups,
    corpus_pairs,
    heisenberg,
    random_invertible,
    random_pair,
    scaling_counterexample,
    sl2,
)
from liedual.duality import (
    NotUnimodularError,
    check_invariants_to_coinvariants,
    coboundary_perturbation,
    cochain_group_action,
    coinvariants,
    derive_sign_table,
    dual_module,
    equivariance_discrepancy,
    invariants,
    pairing_matrix,
    verify_complex_duality,
    verify_equivariance,
    wedge_pairing_check,
    wedge_pairing_matrix,
)
from liedual.linalg import Matrix, det, inverse, rank
from liedual.lie import (
    AutomorphismPair,
    FiniteGroupRep,
    Representation,
    adjoint_rep,
    is_unimodular,
    trivial_rep,
)
from oracles import naive_differential, naive_pairing, naive_wedge_pairing

pair_ids = lambda p: f"{p[0].name}-{p[1].name}"  # noqa: E731


def as_sympy(m: Matrix) -> sympy.Matrix:
    return sympy.Matrix(m.rows, m.cols, [sympy.Rational(x.numerator, x.denominator) for r in m.tolist() for x in r])


def test_pairing_d1_k0():
    assert pairing_matrix(trivial_rep(abelian(1)), 0).gram == Matrix([[1]])


def test_pairing_d2_k1():
    assert pairing_matrix(trivial_rep(abelian(2)), 1).gram == Matrix([[0, -1], [1, 0]])


def test_pairing_zero_module():
    g = pairing_matrix(trivial_rep(abelian(3), 0), 1).gram
    assert g.shape == (0, 0)


@pytest.mark.parametrize("d", range(6))
def test_pairing_against_oracle_and_perfect(d):
    for k in range(d + 1):
        for m in (1, 2):
            P = pairing_matrix(trivial_rep(abelian(d), m), k).gram
            assert as_sympy(P) == naive_pairing(d, k, m)
            assert P.rows == P.cols == rank(P)


def oracle_sign_table(rep, dual):
    """eps_k from sympy matrices of the defining formulas."""
    d = rep.algebra.dim

    def inputs(r):
        return d, r.algebra.brackets, [as_sympy(a) for a in r.action], r.dim

    out = []
    for k in range(d):
        lhs = naive_differential(*inputs(dual), k).T * naive_pairing(d, k + 1, rep.dim)
        rhs = naive_pairing(d, k, rep.dim) * naive_differential(*inputs(rep), d - k - 1)
        if lhs == rhs:
            out.append(1)
        elif lhs == -rhs:
            out.append(-1)
        else:
            out.append(None)
    return tuple(out)


@pytest.mark.parametrize("pair", corpus_pairs(), ids=pair_ids)
def test_sign_table_against_oracle(pair):
    alg, rep = pair
    twisted = not is_unimodular(alg)
    table = derive_sign_table(rep, use_twist=twisted)
    assert table.signs == oracle_sign_table(rep, dual_module(rep, twisted))
    # regression fixture: the derived table is +1 in every degree
    assert set(table.signs) <= {1}


def test_heisenberg_and_sl2_tables_agree():
    assert derive_sign_table(trivial_rep(heisenberg())) == derive_sign_table(adjoint_rep(sl2()))


@pytest.mark.parametrize("pair", [p for p in corpus_pairs() if is_unimodular(p[0])], ids=pair_ids)
def test_duality_untwisted(pair):
    alg, rep = pair
    report = verify_complex_duality(rep)
    assert report.ok
    d = alg.dim
    dual_dims = cohomology(build_ce(dual_module(rep))).dims
    primal_dims = cohomology(build_ce(rep)).dims
    assert dual_dims == primal_dims[::-1]
    for k, g in enumerate(report.grams):
        assert g.rows == g.cols == rank(g) == dual_dims[k]
    assert len(report.degrees) == d + 1


@pytest.mark.parametrize("pair", corpus_pairs(), ids=pair_ids)
def test_duality_twisted_everywhere(pair):
    assert verify_complex_duality(pair[1], use_twist=True).ok


def test_untwisted_requires_unimodular():
    with pytest.raises(NotUnimodularError, match="algebra not unimodular"):
        verify_complex_duality(trivial_rep(affine_line()))


def test_affine_line_twisted_dims():
    report = verify_complex_duality(trivial_rep(affine_line()), use_twist=True)
    assert [x.dim_dual for x in report.degrees] == [0, 1, 1]
    assert [x.dim_primal for x in report.degrees][::-1] == [1, 1, 0]


def test_known_duality_reports():
    r = verify_complex_duality(trivial_rep(abelian(2)))
    assert [x.dim_dual for x in r.degrees] == [1, 2, 1]
    s = verify_complex_duality(trivial_rep(sl2()))
    assert [x.dim_dual for x in s.degrees] == [1, 0, 0, 1]
    assert s.degrees[0].gram_rank == s.degrees[3].gram_rank == 1


@settings(max_examples=30)
@given(st.integers(0, 10_000))
def test_random_duality(seed):
    alg, rep = random_pair(random.Random(seed), max_dim=4, max_module=2)
    assert verify_complex_duality(rep, use_twist=not is_unimodular(alg)).ok


@pytest.mark.parametrize("pair", corpus_pairs(), ids=pair_ids)
def test_gram_rank_independent_of_representatives(pair):
    alg, rep = pair
    twisted = not is_unimodular(alg)
    rng = random.Random(7)

    def seeds(n, j):
        return tuple(Fraction(rng.randint(-3, 3)) for _ in range(n))

    d = alg.dim
    for k in range(d + 1):
        Ra, Rb = coboundary_perturbation(rep, twisted, k, seeds)
        P = pairing_matrix(rep, k).gram
        g0 = verify_complex_duality(rep, twisted).grams[k]
        g1 = Ra.T @ P @ Rb
        assert rank(g1) == rank(g0)
        # the pairing of a coboundary with a cocycle vanishes, so the Gram is unchanged
        assert g1 == g0


def test_group_action_examples():
    rep = trivial_rep(abelian(2))
    ident = AutomorphismPair(Matrix.identity(2), Matrix([[1]]))
    for k in range(3):
        n = pairing_matrix(rep, k).gram.rows
        assert cochain_group_action(rep, ident, k) == Matrix.identity(n)
    m = Matrix([[2, 1], [1, 1]])
    pair = AutomorphismPair(Matrix([[1, 3], [0, 1]]), m)
    assert cochain_group_action(trivial_rep(abelian(2), 2), pair, 0) == m
    diag = AutomorphismPair(Matrix.diag([2, Fraction(1, 2)]), Matrix([[1]]))
    assert cochain_group_action(rep, diag, 1) == Matrix.diag([Fraction(1, 2), 2])


@pytest.mark.parametrize("case", corpus_automorphisms(), ids=lambda c: c[1].name)
def test_equivariance_det_one(case):
    rep, pair = case
    assert verify_equivariance(rep, pair)
    assert equivariance_discrepancy(rep, pair) == (True, 1)


@pytest.mark.parametrize("d, lam", [(1, 2), (2, 2), (2, 3), (3, Fraction(1, 2))])
def test_scaling_discrepancy_is_inverse_det(d, lam):
    rep, pair = scaling_counterexample(d, lam)
    exact, factor = equivariance_discrepancy(rep, pair)
    assert not exact
    assert factor == 1 / det(pair.alg_map)


@given(st.integers(0, 10_000))
def test_abelian_random_automorphism_factor(seed):
    rng = random.Random(seed)
    a = random_invertible(rng, 3)
    rep = trivial_rep(abelian(3))
    exact, factor = equivariance_discrepancy(rep, AutomorphismPair(a, Matrix([[1]])))
    assert factor == 1 / det(a)
    assert exact == (det(a) == 1)


def test_invariants_examples():
    groups = {g.name: g for g in corpus_groups()}
    assert invariants(groups["trivial"]) == Matrix.identity(2)
    inv = invariants(groups["Z2-swap"])
    assert inv.cols == 1 and inv[0, 0] == inv[1, 0] != 0
    assert invariants(groups["Z2-sign"]).cols == 0
    assert coinvariants(groups["trivial"])[0] == 2
    assert coinvariants(groups["Z2-swap"])[0] == 1
    assert coinvariants(groups["Z3-regular"])[0] == 1


@pytest.mark.parametrize("group", corpus_groups(), ids=lambda g: g.name)
def test_invariants_to_coinvariants(group):
    assert check_invariants_to_coinvariants(group)
    assert invariants(group).cols == coinvariants(group)[0]


def test_invariants_to_coinvariants_on_conjugated_regular_rep():
    g = next(x for x in corpus_groups() if x.name == "Z3-regular")
    q = random_invertible(random.Random(3), 3)
    qinv = inverse(q)
    assert check_invariants_to_coinvariants(FiniteGroupRep(3, tuple(q @ e @ qinv for e in g.elements), "Z3-conj"))


@pytest.mark.parametrize("d", range(6))
def test_wedge_pairing_against_oracle(d):
    for k in range(d + 1):
        assert as_sympy(wedge_pairing_matrix(d, k)) == naive_wedge_pairing(d, k)
        agrees, s = wedge_pairing_check(d, k, trivial_rep(abelian(d)))
        assert agrees
        assert s == (-1) ** (k * (k + 1) // 2)


def test_wedge_examples():
    assert wedge_pairing_check(1, 0, trivial_rep(abelian(1)))[0]
    assert wedge_pairing_check(2, 1, trivial_rep(abelian(2)))[0]
    rep = trivial_rep(abelian(3))
    for k in (1, 2):
        assert wedge_pairing_check(3, k, rep)[0]
    w1, w2 = wedge_pairing_matrix(3, 1), wedge_pairing_matrix(3, 2)
    assert w1.T == w2.scale((-1) ** (1 * 2))
    p1, p2 = pairing_matrix(rep, 1).gram, pairing_matrix(rep, 2).gram
    assert p1.T == p2.scale((-1) ** (1 * 2))


@pytest.mark.parametrize("d", range(1, 6))
def test_pairing_transpose_sign(d):
    rep = trivial_rep(abelian(d))
    for k in range(d + 1):
        P, Q = pairing_matrix(rep, k).gram, pairing_matrix(rep, d - k).gram
        assert P.T == Q.scale((-1) ** (d * (d + 1) // 2))
        W, V = wedge_pairing_matrix(d, k), wedge_pairing_matrix(d, d - k)
        assert W.T == V.scale((-1) ** (k * (d - k)))


def test_wedge_check_rejects_nontrivial_action():
    with pytest.raises(ValueError):
        wedge_pairing_check(2, 1, Representation(affine_line(), 1, (Matrix([[1]]), Matrix([[0]]))))
