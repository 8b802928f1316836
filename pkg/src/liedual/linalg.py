"""Exact linear algebra over the rationals.

Scalars are :class:`fractions.Fraction`. Matrices are immutable row-major
grids; every reduction uses Gauss-Jordan elimination with a fixed pivoting
rule (first nonzero entry of the current column, scanning rows top to
bottom), so results are reproducible bit for bit.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

__all__ = [
    "Fraction",
    "Matrix",
    "NoSolution",
    "BrokenComplexError",
    "to_fraction",
    "rank",
    "rref",
    "kernel_basis",
    "image_basis",
    "solve",
    "subquotient",
    "det",
    "inverse",
    "hstack",
    "vstack",
    "block_diag",
    "kron",
]

ZERO = Fraction(0)
ONE = Fraction(1)


class NoSolution(ValueError):
    """Raised by :func:`solve` when the system is inconsistent."""


class BrokenComplexError(ValueError):
    """Image is not contained in the kernel (d∘d ≠ 0)."""


def to_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, float):
        raise TypeError("floats are not exact; pass an int, Fraction or 'p/q' string")
    return Fraction(x)


class Matrix:
    """Dense exact-rational matrix, immutable after construction."""

    __slots__ = ("rows", "cols", "_data", "_hash")

    def __init__(self, data: Iterable[Iterable], cols: int | None = None):
        grid = tuple(tuple(to_fraction(x) for x in row) for row in data)
        if cols is None:
            if not grid:
                raise ValueError("column count required for a matrix with no rows")
            cols = len(grid[0])
        for row in grid:
            if len(row) != cols:
                raise ValueError("ragged matrix rows")
        self.rows = len(grid)
        self.cols = cols
        self._data = grid
        self._hash = None

    @classmethod
    def _raw(cls, grid: tuple, cols: int) -> "Matrix":
        # trusted constructor: grid is already a tuple of tuples of Fraction
        m = object.__new__(cls)
        m.rows = len(grid)
        m.cols = cols
        m._data = grid
        m._hash = None
        return m

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "Matrix":
        return cls._raw(tuple((ZERO,) * cols for _ in range(rows)), cols)

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        return cls._raw(
            tuple(tuple(ONE if i == j else ZERO for j in range(n)) for i in range(n)), n
        )

    @classmethod
    def diag(cls, entries: Sequence) -> "Matrix":
        vals = [to_fraction(x) for x in entries]
        n = len(vals)
        return cls._raw(
            tuple(tuple(vals[i] if i == j else ZERO for j in range(n)) for i in range(n)), n
        )

    @classmethod
    def column(cls, entries: Sequence) -> "Matrix":
        return cls([[x] for x in entries], cols=1)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence], rows: int) -> "Matrix":
        cols = [[to_fraction(x) for x in c] for c in columns]
        return cls._raw(tuple(tuple(c[i] for c in cols) for i in range(rows)), len(cols))

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def __getitem__(self, idx):
        i, j = idx
        return self._data[i][j]

    def row(self, i: int) -> tuple:
        return self._data[i]

    def column_vector(self, j: int) -> tuple:
        return tuple(r[j] for r in self._data)

    def columns(self) -> list[tuple]:
        return [self.column_vector(j) for j in range(self.cols)]

    def tolist(self) -> list[list[Fraction]]:
        return [list(r) for r in self._data]

    @property
    def T(self) -> "Matrix":
        return Matrix._raw(
            tuple(tuple(self._data[i][j] for i in range(self.rows)) for j in range(self.cols)),
            self.rows,
        )

    def transpose(self) -> "Matrix":
        return self.T

    def is_zero(self) -> bool:
        return all(x == 0 for r in self._data for x in r)

    def is_square(self) -> bool:
        return self.rows == self.cols

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "Matrix":
        return Matrix._raw(tuple(tuple(self._data[i][j] for j in cols) for i in rows), len(cols))

    def __eq__(self, other) -> bool:
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.shape == other.shape and self._data == other._data

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.rows, self.cols, self._data))
        return self._hash

    def __repr__(self) -> str:
        return f"Matrix({self.serialize()!r}, cols={self.cols})"

    def __add__(self, other: "Matrix") -> "Matrix":
        self._check_same_shape(other)
        return Matrix._raw(
            tuple(tuple(a + b for a, b in zip(r, s)) for r, s in zip(self._data, other._data)),
            self.cols,
        )

    def __sub__(self, other: "Matrix") -> "Matrix":
        self._check_same_shape(other)
        return Matrix._raw(
            tuple(tuple(a - b for a, b in zip(r, s)) for r, s in zip(self._data, other._data)),
            self.cols,
        )

    def __neg__(self) -> "Matrix":
        return Matrix._raw(tuple(tuple(-a for a in r) for r in self._data), self.cols)

    def scale(self, c) -> "Matrix":
        c = to_fraction(c)
        return Matrix._raw(tuple(tuple(c * a for a in r) for r in self._data), self.cols)

    def __rmul__(self, c) -> "Matrix":
        return self.scale(c)

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        ocols = other.columns()
        out = []
        for r in self._data:
            nz = [(k, a) for k, a in enumerate(r) if a]
            out.append(tuple(sum((a * c[k] for k, a in nz), ZERO) for c in ocols))
        return Matrix._raw(tuple(out), other.cols)

    def apply(self, vec: Sequence) -> tuple:
        if len(vec) != self.cols:
            raise ValueError("vector length mismatch")
        v = [to_fraction(x) for x in vec]
        return tuple(sum((a * b for a, b in zip(r, v) if a), ZERO) for r in self._data)

    def _check_same_shape(self, other: "Matrix") -> None:
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")

    def serialize(self) -> list[list[str]]:
        return [[str(x) for x in r] for r in self._data]

    @classmethod
    def deserialize(cls, rows: Sequence[Sequence[str]], cols: int | None = None) -> "Matrix":
        if cols is None and not rows:
            cols = 0
        return cls([[Fraction(x) for x in r] for r in rows], cols=cols)


def hstack(mats: Sequence[Matrix], rows: int | None = None) -> Matrix:
    if not mats:
        return Matrix.zeros(rows or 0, 0)
    n = mats[0].rows
    if any(m.rows != n for m in mats):
        raise ValueError("hstack: row counts differ")
    return Matrix._raw(
        tuple(tuple(x for m in mats for x in m.row(i)) for i in range(n)),
        sum(m.cols for m in mats),
    )


def vstack(mats: Sequence[Matrix], cols: int | None = None) -> Matrix:
    if not mats:
        return Matrix.zeros(0, cols or 0)
    c = mats[0].cols
    if any(m.cols != c for m in mats):
        raise ValueError("vstack: column counts differ")
    return Matrix._raw(tuple(r for m in mats for r in m._data), c)


def block_diag(mats: Sequence[Matrix]) -> Matrix:
    total_c = sum(m.cols for m in mats)
    out = []
    offset = 0
    for m in mats:
        for r in m._data:
            out.append((ZERO,) * offset + r + (ZERO,) * (total_c - offset - m.cols))
        offset += m.cols
    return Matrix._raw(tuple(out), total_c)


def kron(a: Matrix, b: Matrix) -> Matrix:
    """Kronecker product; block (i, j) is a[i, j] * b."""
    out = []
    for ra in a._data:
        for rb in b._data:
            out.append(tuple(x * y for x in ra for y in rb))
    return Matrix._raw(tuple(out), a.cols * b.cols)


def rref(m: Matrix) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form and pivot columns.

    Pivot rule: walk the columns left to right, take the first row at or
    below the current pivot row with a nonzero entry, scale it to 1.
    """
    rows = [list(r) for r in m._data]
    pivots: list[int] = []
    prow = 0
    for col in range(m.cols):
        if prow == m.rows:
            break
        sel = next((i for i in range(prow, m.rows) if rows[i][col] != 0), None)
        if sel is None:
            continue
        rows[prow], rows[sel] = rows[sel], rows[prow]
        piv = rows[prow][col]
        if piv != 1:
            rows[prow] = [x / piv for x in rows[prow]]
        prow_vals = rows[prow]
        for i in range(m.rows):
            if i != prow:
                f = rows[i][col]
                if f:
                    rows[i] = [a - f * b for a, b in zip(rows[i], prow_vals)]
        pivots.append(col)
        prow += 1
    return Matrix._raw(tuple(tuple(r) for r in rows), m.cols), pivots


def rank(m: Matrix) -> int:
    return len(rref(m)[1])


def kernel_basis(m: Matrix) -> Matrix:
    """Columns form a basis of the right kernel, one per free column."""
    r, pivots = rref(m)
    pivset = set(pivots)
    free = [j for j in range(m.cols) if j not in pivset]
    basis = []
    for f in free:
        v = [ZERO] * m.cols
        v[f] = ONE
        for i, pc in enumerate(pivots):
            v[pc] = -r[i, f]
        basis.append(v)
    return Matrix.from_columns(basis, m.cols)


def image_basis(m: Matrix) -> Matrix:
    """The pivot columns of ``m`` itself."""
    _, pivots = rref(m)
    return m.submatrix(range(m.rows), pivots)


def solve(m: Matrix, b: Sequence) -> tuple:
    """One exact solution of ``m x = b``; raises :class:`NoSolution`."""
    if len(b) != m.rows:
        raise ValueError(f"right-hand side has length {len(b)}, expected {m.rows}")
    aug = hstack([m, Matrix.column(b)]) if m.rows else Matrix.zeros(0, m.cols + 1)
    r, pivots = rref(aug)
    if pivots and pivots[-1] == m.cols:
        raise NoSolution("inconsistent linear system")
    x = [ZERO] * m.cols
    for i, pc in enumerate(pivots):
        x[pc] = r[i, m.cols]
    return tuple(x)


def subquotient(kernel_of: Matrix, image_of: Matrix) -> tuple[int, Matrix]:
    """``ker(kernel_of) / im(image_of)``: its dimension and representatives.

    Representatives are the kernel-basis vectors that raise the rank when
    appended greedily, in kernel-basis order, to a basis of the image.
    """
    if kernel_of.cols != image_of.rows:
        raise ValueError("subquotient: incompatible shapes")
    n = kernel_of.cols
    if not (kernel_of @ image_of).is_zero():
        raise BrokenComplexError("image is not contained in the kernel")
    kb = kernel_basis(kernel_of)
    ib = image_basis(image_of)
    chosen: list[tuple] = []
    current = list(ib.columns())
    r = len(current)
    for v in kb.columns():
        trial = Matrix.from_columns(current + [v], n)
        if rank(trial) > r:
            current.append(v)
            chosen.append(v)
            r += 1
    dim = kb.cols - ib.cols
    assert dim == len(chosen)
    return dim, Matrix.from_columns(chosen, n)


def _bareiss_det(grid: list[list[int]]) -> int:
    n = len(grid)
    a = [row[:] for row in grid]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            sel = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if sel is None:
                return 0
            a[k], a[sel] = a[sel], a[k]
            sign = -sign
        akk = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            row_i = a[i]
            row_k = a[k]
            for j in range(k + 1, n):
                row_i[j] = (row_i[j] * akk - aik * row_k[j]) // prev
        prev = akk
    return sign * a[n - 1][n - 1]


def _cofactor_det(grid: list[list[Fraction]]) -> Fraction:
    n = len(grid)
    if n == 0:
        return ONE
    if n == 1:
        return grid[0][0]
    if n == 2:
        return grid[0][0] * grid[1][1] - grid[0][1] * grid[1][0]
    total = ZERO
    for j, a in enumerate(grid[0]):
        if a:
            minor = [r[:j] + r[j + 1:] for r in grid[1:]]
            term = a * _cofactor_det(minor)
            total += term if j % 2 == 0 else -term
    return total


def det(m: Matrix, method: str = "auto") -> Fraction:
    """Exact determinant.

    ``auto`` uses cofactor expansion up to 4x4 and fraction-free Bareiss
    elimination (after clearing denominators) above.
    """
    if not m.is_square():
        raise ValueError("determinant of a non-square matrix")
    n = m.rows
    if n == 0:
        return ONE
    if method == "cofactor" or (method == "auto" and n <= 4):
        return _cofactor_det([list(r) for r in m._data])
    if method not in ("auto", "elimination"):
        raise ValueError(f"unknown method {method!r}")
    denom = 1
    for r in m._data:
        for x in r:
            q = x.denominator
            if q != 1:
                denom = denom * q // _gcd(denom, q)
    ints = [[(x * denom).numerator for x in r] for r in m._data]
    return Fraction(_bareiss_det(ints), denom**n)


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a


def inverse(m: Matrix) -> Matrix:
    if not m.is_square():
        raise ValueError("inverse of a non-square matrix")
    n = m.rows
    r, pivots = rref(hstack([m, Matrix.identity(n)]))
    if pivots[:n] != list(range(n)):
        raise ZeroDivisionError("matrix is singular")
    return r.submatrix(range(n), range(n, 2 * n))
