"""Truncated Lubin-Tate series over the rationals.

Everything lives in Q[T]/(T^N) (or total degree < N for several
variables). The endomorphism is [pi](T) = T^q + pi T; the formal group
law F and the series [a](T) are obtained layer by layer from the
commutation with [pi], each homogeneous layer having diagonal pi^n - pi.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from .ce import CochainComplex
from .linalg import BrokenComplexError, Matrix, hstack, solve, to_fraction, vstack

__all__ = [
    "LTContext",
    "TruncatedSeries",
    "BivariateTruncatedSeries",
    "LaurentPoly",
    "CommutationError",
    "vp",
    "abs_p",
    "bracket_pi",
    "formal_group_law",
    "bracket_a",
    "phi_action",
    "gamma_action",
    "psi_dec",
    "psi",
    "psi_exact_degree",
    "operator_matrix",
    "gauss_norm",
    "interval_norm",
    "herr_complex",
    "formal_group_law_trivariate_check",
]


class CommutationError(BrokenComplexError):
    pass


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    f = 2
    while f * f <= n:
        if n % f == 0:
            return False
        f += 1
    return True


def vp(x, p: int) -> int:
    """p-adic valuation of a nonzero rational."""
    x = to_fraction(x)
    if x == 0:
        raise ValueError("valuation of zero")
    v = 0
    n, d = x.numerator, x.denominator
    while n % p == 0:
        n //= p
        v += 1
    while d % p == 0:
        d //= p
        v -= 1
    return v


def abs_p(x, p: int) -> Fraction:
    """|x|_p normalized by |p| = 1/p; |0| = 0."""
    x = to_fraction(x)
    if x == 0:
        return Fraction(0)
    return Fraction(p) ** (-vp(x, p))


@dataclass(frozen=True)
class LTContext:
    p: int
    q: int
    pi: Fraction
    N: int

    def __init__(self, p: int, q: int | None = None, pi=None, N: int = 8):
        q = p if q is None else q
        pi = Fraction(p) if pi is None else to_fraction(pi)
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "q", q)
        object.__setattr__(self, "pi", pi)
        object.__setattr__(self, "N", N)
        if not _is_prime(p):
            raise ValueError(f"p={p} is not prime")
        qq = q
        while qq > 1 and qq % p == 0:
            qq //= p
        if q < p or qq != 1:
            raise ValueError(f"q={q} is not a positive power of p={p}")
        if pi == 0 or vp(pi, p) != 1:
            raise ValueError(f"pi={pi} must have {p}-adic valuation 1")
        if N < 2:
            raise ValueError("truncation N must be at least 2")

    def serialize(self) -> dict:
        return {"p": self.p, "q": self.q, "pi": str(self.pi), "N": self.N}


class TruncatedSeries:
    """Power series mod T^N with exact rational coefficients."""

    __slots__ = ("ctx", "coeffs")

    def __init__(self, ctx: LTContext, coeffs: Sequence = ()):
        c = [to_fraction(x) for x in coeffs][: ctx.N]
        c += [Fraction(0)] * (ctx.N - len(c))
        self.ctx = ctx
        self.coeffs = tuple(c)

    @classmethod
    def monomial(cls, ctx: LTContext, n: int, c=1) -> "TruncatedSeries":
        return cls(ctx, [0] * n + [c])

    def __eq__(self, other):
        return isinstance(other, TruncatedSeries) and self.ctx == other.ctx and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.ctx, self.coeffs))

    def __repr__(self):
        terms = [f"{c}*T^{i}" for i, c in enumerate(self.coeffs) if c]
        return " + ".join(terms) or "0"

    def __add__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        return TruncatedSeries(self.ctx, [a + b for a, b in zip(self.coeffs, other.coeffs)])

    def __sub__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        return TruncatedSeries(self.ctx, [a - b for a, b in zip(self.coeffs, other.coeffs)])

    def __neg__(self):
        return TruncatedSeries(self.ctx, [-a for a in self.coeffs])

    def scale(self, c) -> "TruncatedSeries":
        c = to_fraction(c)
        return TruncatedSeries(self.ctx, [c * a for a in self.coeffs])

    def __mul__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        return TruncatedSeries(self.ctx, _umul(self.coeffs, other.coeffs, self.ctx.N))

    def __pow__(self, e: int) -> "TruncatedSeries":
        out = [Fraction(1)] + [Fraction(0)] * (self.ctx.N - 1)
        for _ in range(e):
            out = _umul(out, self.coeffs, self.ctx.N)
        return TruncatedSeries(self.ctx, out)

    def compose(self, inner: "TruncatedSeries") -> "TruncatedSeries":
        """self(inner(T)) mod T^N; inner must have zero constant term."""
        if inner.coeffs[0] != 0:
            raise ValueError("inner series must have zero constant term")
        return TruncatedSeries(self.ctx, _ucompose(self.coeffs, inner.coeffs, self.ctx.N))

    def degree(self) -> int:
        nz = [i for i, c in enumerate(self.coeffs) if c]
        return nz[-1] if nz else -1

    def serialize(self) -> dict:
        return {**self.ctx.serialize(), "coeffs": [str(c) for c in self.coeffs]}

    @classmethod
    def deserialize(cls, doc: Mapping) -> "TruncatedSeries":
        ctx = LTContext(int(doc["p"]), int(doc["q"]), Fraction(doc["pi"]), int(doc["N"]))
        return cls(ctx, [Fraction(c) for c in doc["coeffs"]])


def _umul(a: Sequence, b: Sequence, N: int) -> list:
    out = [Fraction(0)] * N
    for i, x in enumerate(a):
        if not x:
            continue
        for j in range(min(len(b), N - i)):
            y = b[j]
            if y:
                out[i + j] += x * y
    return out


def _ucompose(f: Sequence, g: Sequence, N: int) -> list:
    out = [Fraction(0)] * N
    for c in reversed(f[:N]):
        out = _umul(out, g, N)
        out[0] += c
    return out


# -- multivariate truncated polynomials: dict exponent-tuple -> Fraction --

def _mtrim(p: dict, N: int) -> dict:
    return {e: c for e, c in p.items() if c and sum(e) < N}


def _mmul(a: dict, b: dict, N: int) -> dict:
    out: dict = {}
    for ea, ca in a.items():
        da = sum(ea)
        for eb, cb in b.items():
            if da + sum(eb) >= N:
                continue
            e = tuple(x + y for x, y in zip(ea, eb))
            out[e] = out.get(e, 0) + ca * cb
    return {e: c for e, c in out.items() if c}


def _madd(a: dict, b: dict, scale=1) -> dict:
    out = dict(a)
    for e, c in b.items():
        out[e] = out.get(e, 0) + scale * c
    return {e: c for e, c in out.items() if c}


def _mpowers(a: dict, top: int, nvars: int, N: int) -> list:
    one = {(0,) * nvars: Fraction(1)}
    pows = [one]
    for _ in range(top):
        pows.append(_mmul(pows[-1], a, N))
    return pows


def _mcompose(F: dict, subs: Sequence[dict], nvars: int, N: int) -> dict:
    """F(subs[0], subs[1], ...) truncated at total degree N."""
    top = max((max(e) for e in F), default=0)
    powers = [_mpowers(s, top, nvars, N) for s in subs]
    out: dict = {}
    for e, c in F.items():
        term = {(0,) * nvars: c}
        for var, k in enumerate(e):
            if k:
                term = _mmul(term, powers[var][k], N)
                if not term:
                    break
        out = _madd(out, term)
    return out


def _univariate_in(coeffs: Sequence, var: int, nvars: int) -> dict:
    out = {}
    for i, c in enumerate(coeffs):
        if c:
            e = [0] * nvars
            e[var] = i
            out[tuple(e)] = c
    return out


class BivariateTruncatedSeries:
    """F(X, Y) = sum c[i, j] X^i Y^j, truncated at total degree N."""

    __slots__ = ("ctx", "coeffs")

    def __init__(self, ctx: LTContext, coeffs: Mapping):
        self.ctx = ctx
        self.coeffs = _mtrim({tuple(e): to_fraction(c) for e, c in coeffs.items()}, ctx.N)

    def __getitem__(self, e) -> Fraction:
        return self.coeffs.get(tuple(e), Fraction(0))

    def __eq__(self, other):
        return isinstance(other, BivariateTruncatedSeries) and self.ctx == other.ctx and self.coeffs == other.coeffs

    def __repr__(self):
        terms = [f"{c}*X^{i}Y^{j}" for (i, j), c in sorted(self.coeffs.items(), key=lambda t: (sum(t[0]), t[0]))]
        return " + ".join(terms) or "0"

    def layer(self, n: int) -> dict:
        """The homogeneous part of total degree n."""
        return {e: c for e, c in self.coeffs.items() if sum(e) == n}

    def __call__(self, x: TruncatedSeries, y: TruncatedSeries) -> TruncatedSeries:
        """F(x(T), y(T)) mod T^N; both inputs need zero constant term."""
        if x.coeffs[0] or y.coeffs[0]:
            raise ValueError("substituted series must have zero constant term")
        out = _mcompose(self.coeffs, [_univariate_in(x.coeffs, 0, 1), _univariate_in(y.coeffs, 0, 1)], 1, self.ctx.N)
        return TruncatedSeries(self.ctx, [out.get((i,), 0) for i in range(self.ctx.N)])

    def swapped(self) -> "BivariateTruncatedSeries":
        return BivariateTruncatedSeries(self.ctx, {(j, i): c for (i, j), c in self.coeffs.items()})

    def serialize(self) -> dict:
        return {
            **self.ctx.serialize(),
            "terms": [[i, j, str(c)] for (i, j), c in sorted(self.coeffs.items(), key=lambda t: (sum(t[0]), t[0]))],
        }


def bracket_pi(ctx: LTContext) -> TruncatedSeries:
    """[pi](T) = T^q + pi T mod T^N."""
    c = [Fraction(0)] * ctx.N
    c[1] = ctx.pi
    if ctx.q < ctx.N:
        c[ctx.q] += 1
    return TruncatedSeries(ctx, c)


def formal_group_law(ctx: LTContext) -> BivariateTruncatedSeries:
    """The unique F = X + Y + ... with F([pi]X, [pi]Y) = [pi](F(X, Y))."""
    N, pi, q = ctx.N, ctx.pi, ctx.q
    P = bracket_pi(ctx).coeffs
    PX = _univariate_in(P, 0, 2)
    PY = _univariate_in(P, 1, 2)
    F = {(1, 0): Fraction(1), (0, 1): Fraction(1)}
    F = _mtrim(F, N)
    for n in range(2, N):
        inner = _mcompose(F, [PX, PY], 2, n + 1)
        outer = _madd(_mpowers(F, q, 2, n + 1)[q], F, scale=pi)
        diag = pi**n - pi
        if diag == 0:
            raise ArithmeticError(f"singular layer {n}")
        for i in range(n + 1):
            e = (i, n - i)
            rhs = outer.get(e, 0) - inner.get(e, 0)
            if rhs:
                F[e] = Fraction(rhs) / diag
    return BivariateTruncatedSeries(ctx, F)


def bracket_a(ctx: LTContext, a) -> TruncatedSeries:
    """The unique [a](T) = aT + ... commuting with [pi] under composition."""
    a = to_fraction(a)
    if a != 0 and vp(a, ctx.p) < 0:
        raise ValueError(f"a={a} is not {ctx.p}-integral")
    N, pi = ctx.N, ctx.pi
    P = bracket_pi(ctx).coeffs
    b = [Fraction(0)] * N
    b[1] = a
    for n in range(2, N):
        lhs = _ucompose(b, P, n + 1)[n]  # [a]([pi](T)) without the unknown
        rhs = _ucompose(P, b, n + 1)[n]  # [pi]([a](T))
        b[n] = (rhs - lhs) / (pi**n - pi)
    return TruncatedSeries(ctx, b)


def phi_action(ctx: LTContext, f: TruncatedSeries) -> TruncatedSeries:
    """f([pi](T))."""
    return f.compose(bracket_pi(ctx))


def _check_unit(ctx: LTContext, u) -> Fraction:
    u = to_fraction(u)
    if u == 0 or vp(u, ctx.p) != 0:
        raise ValueError(f"u={u} is not a {ctx.p}-adic unit")
    return u


def gamma_action(ctx: LTContext, f: TruncatedSeries, u) -> TruncatedSeries:
    """f([u](T)) for a p-adic unit u."""
    return f.compose(bracket_a(ctx, _check_unit(ctx, u)))


def psi_exact_degree(ctx: LTContext) -> int:
    """Largest deg g for which psi_dec(phi_action(g)) == g is guaranteed.

    phi_action(g) is computed without loss iff q * deg(g) < N.
    """
    return (ctx.N - 1) // ctx.q


def psi_dec(ctx: LTContext, f: TruncatedSeries) -> TruncatedSeries:
    """f_0 in the decomposition f = sum_{i<q} phi(f_i) T^i.

    f is read as the polynomial given by its N coefficients. The columns
    phi(T^m) T^i, indexed by n = q m + i < N, have top coefficient 1 in
    degree n and lower terms divisible by pi, so the system is unitriangular
    and the decomposition into polynomials f_i is unique.
    """
    N, q = ctx.N, ctx.q
    P = bracket_pi(ctx)
    cols = []
    for n in range(N):
        m, i = divmod(n, q)
        col = (P ** m).coeffs  # degree q m <= n < N, nothing truncated
        col = (0,) * i + col[: N - i]
        cols.append(col)
    A = Matrix.from_columns(cols, N)
    x = solve(A, f.coeffs)
    f0 = [x[q * m] for m in range((N - 1) // q + 1)]
    return TruncatedSeries(ctx, f0)


def psi(ctx: LTContext, f: TruncatedSeries) -> TruncatedSeries:
    """(q / pi) psi_dec, so that psi o phi = (q / pi) id."""
    return psi_dec(ctx, f).scale(Fraction(ctx.q) / ctx.pi)


def operator_matrix(ctx: LTContext, inner: TruncatedSeries) -> Matrix:
    """Matrix of f -> f(inner) on A_N in the basis 1, T, ..., T^{N-1}."""
    cols = [TruncatedSeries.monomial(ctx, j).compose(inner).coeffs for j in range(ctx.N)]
    return Matrix.from_columns(cols, ctx.N)


def herr_complex(ctx: LTContext, u) -> CochainComplex:
    """A_N -> A_N + A_N -> A_N with
    d0 x = ((phi - 1) x, (gamma - 1) x), d1 (a, b) = (gamma - 1) a - (phi - 1) b,
    gamma acting through [u]. A single generator stands in for Gamma."""
    u = _check_unit(ctx, u)
    N = ctx.N
    eye = Matrix.identity(N)
    Phi = operator_matrix(ctx, bracket_pi(ctx)) - eye
    Gam = operator_matrix(ctx, bracket_a(ctx, u)) - eye
    if Phi @ Gam != Gam @ Phi:
        raise CommutationError("phi and gamma do not commute mod T^N")
    d0 = vstack([Phi, Gam])
    d1 = hstack([Gam, -Phi])
    return CochainComplex((N, 2 * N, N), (d0, d1), label=f"Herr(p={ctx.p},q={ctx.q},N={N},u={u})")


def formal_group_law_trivariate_check(F: BivariateTruncatedSeries) -> bool:
    """F(F(X, Y), Z) == F(X, F(Y, Z)) at total degree < N."""
    N = F.ctx.N
    X = {(1, 0, 0): Fraction(1)}
    Y = {(0, 1, 0): Fraction(1)}
    Z = {(0, 0, 1): Fraction(1)}
    FXY = _mcompose(F.coeffs, [X, Y], 3, N)
    FYZ = _mcompose(F.coeffs, [Y, Z], 3, N)
    return _mcompose(F.coeffs, [FXY, Z], 3, N) == _mcompose(F.coeffs, [X, FYZ], 3, N)


@dataclass(frozen=True)
class LaurentPoly:
    """sum_{i = lo}^{lo + len - 1} coeffs[i - lo] X^i with p fixed."""

    lo: int
    coeffs: tuple
    p: int

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(to_fraction(c) for c in self.coeffs))

    def terms(self):
        for k, c in enumerate(self.coeffs):
            if c:
                yield self.lo + k, c

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __mul__(self, other: "LaurentPoly") -> "LaurentPoly":
        if self.p != other.p:
            raise ValueError("different primes")
        if not self.coeffs or not other.coeffs:
            return LaurentPoly(0, (), self.p)
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return LaurentPoly(self.lo + other.lo, tuple(out), self.p)

    def __add__(self, other: "LaurentPoly") -> "LaurentPoly":
        if self.p != other.p:
            raise ValueError("different primes")
        if not self.coeffs:
            return other
        if not other.coeffs:
            return self
        lo = min(self.lo, other.lo)
        hi = max(self.lo + len(self.coeffs), other.lo + len(other.coeffs))
        out = [Fraction(0)] * (hi - lo)
        for i, c in self.terms():
            out[i - lo] += c
        for i, c in other.terms():
            out[i - lo] += c
        return LaurentPoly(lo, tuple(out), self.p)

    def serialize(self) -> dict:
        return {"p": self.p, "lo": self.lo, "coeffs": [str(c) for c in self.coeffs]}


def _check_radius(t: Fraction) -> Fraction:
    t = to_fraction(t)
    if not 0 < t < 1:
        raise ValueError(f"t={t} outside (0, 1)")
    return t


def gauss_norm(f: LaurentPoly, t) -> Fraction:
    """max_i |a_i|_p t^i; 0 for the zero polynomial."""
    t = _check_radius(t)
    return max((abs_p(c, f.p) * t**i for i, c in f.terms()), default=Fraction(0))


def interval_norm(f: LaurentPoly, r, s) -> Fraction:
    r, s = _check_radius(r), _check_radius(s)
    if r > s:
        raise ValueError("need r <= s")
    return max(gauss_norm(f, r), gauss_norm(f, s))
