from fractions import Fraction

import pytest
import sympy
from hypothesis import given, strategies as st

from conftest import matrices, small_fractions, square_matrices
from liedual.linalg import (
    BrokenComplexError,
    Matrix,
    NoSolution,
    det,
    hstack,
    image_basis,
    inverse,
    kernel_basis,
    kron,
    rank,
    rref,
    solve,
    subquotient,
    vstack,
)


def to_sympy(m: Matrix) -> sympy.Matrix:
    return sympy.Matrix(m.rows, m.cols, [sympy.Rational(x.numerator, x.denominator) for r in m.tolist() for x in r])


def test_floats_rejected():
    with pytest.raises(TypeError):
        Matrix([[0.5]])


def test_ragged_rows_rejected():
    with pytest.raises(ValueError):
        Matrix([[1, 2], [3]])


def test_identity_and_zero_shapes():
    assert Matrix.identity(3) @ Matrix.zeros(3, 2) == Matrix.zeros(3, 2)
    assert Matrix.zeros(0, 4).shape == (0, 4)
    assert det(Matrix.zeros(0, 0)) == 1


@given(matrices())
def test_rank_matches_sympy(m):
    assert rank(m) == (to_sympy(m).rank() if m.rows and m.cols else 0)


@given(matrices())
def test_rref_is_reduced(m):
    r, pivots = rref(m)
    for i, pc in enumerate(pivots):
        assert r[i, pc] == 1
        assert all(r[k, pc] == 0 for k in range(r.rows) if k != i)
    assert pivots == sorted(pivots)
    assert all(all(x == 0 for x in r.row(i)) for i in range(len(pivots), r.rows))


@given(matrices())
def test_kernel_and_image(m):
    k = kernel_basis(m)
    assert k.shape == (m.cols, m.cols - rank(m))
    assert (m @ k).is_zero()
    assert rank(k) == k.cols
    im = image_basis(m)
    assert im.cols == rank(m) == rank(hstack([im, m], rows=m.rows))


@given(square_matrices(max_dim=6))
def test_det_methods_agree_with_sympy(m):
    expected = to_sympy(m).det()
    for method in ("cofactor", "elimination", "auto"):
        assert det(m, method) == Fraction(int(expected.p), int(expected.q))


@given(square_matrices(max_dim=5))
def test_inverse(m):
    if det(m) == 0:
        with pytest.raises(ZeroDivisionError):
            inverse(m)
    else:
        assert inverse(m) @ m == Matrix.identity(m.rows)
        assert det(inverse(m)) * det(m) == 1


@given(square_matrices(max_dim=4), square_matrices(max_dim=4))
def test_det_multiplicative(a, b):
    if a.rows == b.rows:
        assert det(a @ b) == det(a) * det(b)


@given(matrices(max_dim=4), st.data())
def test_solve(m, data):
    x = [data.draw(small_fractions) for _ in range(m.cols)]
    b = m.apply(x)
    y = solve(m, b)
    assert m.apply(y) == b


def test_solve_inconsistent():
    with pytest.raises(NoSolution):
        solve(Matrix([[1, 1], [1, 1]]), [1, 2])
    with pytest.raises(ValueError):
        solve(Matrix([[1, 1]]), [1, 2])


def test_subquotient_rejects_broken_pair():
    with pytest.raises(BrokenComplexError):
        subquotient(Matrix([[1]]), Matrix([[1]]))


@given(matrices(max_dim=4), st.data())
def test_subquotient_dimension(a, data):
    # im(b) lands in ker(a) by construction: b = K c
    k = kernel_basis(a)
    c = data.draw(matrices(rows=k.cols, max_dim=3))
    b = k @ c
    dim, reps = subquotient(a, b)
    assert dim == a.cols - rank(a) - rank(b)
    assert reps.shape == (a.cols, dim)
    assert (a @ reps).is_zero()
    assert rank(hstack([b, reps], rows=a.cols)) == rank(b) + dim


def test_kron_mixed_product():
    a = Matrix([[1, 2], [3, 4]])
    b = Matrix([[0, 1], [1, 0]])
    c = Matrix([[2, 0], [1, 1]])
    d = Matrix([[1, Fraction(1, 2)], [0, 1]])
    assert kron(a, b) @ kron(c, d) == kron(a @ c, b @ d)


def test_stacks():
    a = Matrix([[1, 2]])
    assert vstack([a, a]).shape == (2, 2)
    assert hstack([a, a]).shape == (1, 4)
    assert vstack([], cols=3).shape == (0, 3)


@given(matrices())
def test_serialize_roundtrip(m):
    assert Matrix.deserialize(m.serialize(), cols=m.cols) == m


@given(matrices())
def test_transpose_involution(m):
    assert m.T.T == m
    assert m.T.shape == (m.cols, m.rows)
