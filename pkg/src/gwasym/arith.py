"""Exact and high-precision arithmetic primitives.

Rationals are :class:`fractions.Fraction`; precision-parameterized reals and
complex numbers are :mod:`mpmath` ``mpf``/``mpc`` values evaluated under
:func:`precision`.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial
from typing import Any, Callable, Iterable, Sequence

import mpmath

__all__ = [
    "Rational",
    "bernoulli",
    "precompute_bernoulli",
    "f_cs",
    "QPolynomial",
    "TruncatedSeries",
    "DirichletVector",
    "dirichlet_mul",
    "dirichlet_div",
    "divisors",
    "precision",
    "big",
    "to_mpf",
    "falling_binomial",
    "rational_str",
    "parse_rational",
    "mp_str",
    "sum_exact",
    "parse_polynomial",
]

Rational = Fraction

DEFAULT_DPS = 200


# ---------------------------------------------------------------------------
# Bernoulli numbers

_bern_lock = threading.Lock()
_bern: list[Fraction] = [Fraction(1)]


def precompute_bernoulli(n: int) -> None:
    """Fill the Bernoulli cache through index ``n``.

    Call before fanning work out to threads; lookups below the bound never
    take the lock.
    """
    if n < len(_bern):
        return
    with _bern_lock:
        m = len(_bern)
        while m <= n:
            # sum_{k=0}^{m} C(m+1, k) B_k = 0
            s = Fraction(0)
            for k in range(m):
                if k > 1 and k % 2 == 1:
                    continue
                s += comb(m + 1, k) * _bern[k]
            _bern.append(-s / (m + 1))
            m += 1


def bernoulli(n: int) -> Fraction:
    """Exact Bernoulli number ``B_n`` with ``B_1 = -1/2``."""
    if n < 0:
        raise ValueError(f"bernoulli index must be >= 0, got {n}")
    if n >= len(_bern):
        precompute_bernoulli(n)
    return _bern[n]


def f_cs(g: int) -> Fraction:
    """Chern-Simons/conifold coefficient ``(-1)^(g-1) B_2g / (2g (2g-2)!)``.

    ``f_cs(0) = 1`` by convention.
    """
    if g < 0:
        raise ValueError(f"genus must be >= 0, got {g}")
    if g == 0:
        return Fraction(1)
    sign = 1 if g % 2 == 1 else -1
    return sign * bernoulli(2 * g) / (2 * g * factorial(2 * g - 2))


def divisors(n: int) -> list[int]:
    """Positive divisors of ``n`` in increasing order."""
    if n < 1:
        raise ValueError(f"divisors need n >= 1, got {n}")
    small, large = [], []
    i = 1
    while i * i <= n:
        if n % i == 0:
            small.append(i)
            if i * i != n:
                large.append(n // i)
        i += 1
    return small + large[::-1]


# ---------------------------------------------------------------------------
# Precision handling


def precision(dps: int):
    """Context manager running mpmath at ``dps`` decimal digits."""
    return mpmath.workdps(dps)


def big(x: Any) -> Any:
    """Convert a rational or number to an mpmath scalar at current precision."""
    if isinstance(x, Fraction):
        return mpmath.mpf(x.numerator) / x.denominator
    if isinstance(x, (mpmath.mpf, mpmath.mpc)):
        return x
    if isinstance(x, complex):
        return mpmath.mpc(x)
    return mpmath.mpf(x)


to_mpf = big


# ---------------------------------------------------------------------------
# Polynomials


def _frac(x: Any) -> Any:
    if isinstance(x, int):
        return Fraction(x)
    return x


@dataclass(frozen=True)
class QPolynomial:
    """Exact univariate polynomial, coefficients in ascending order."""

    coeffs: tuple
    var: str = "q"

    def __post_init__(self):
        c = [_frac(x) for x in self.coeffs]
        while c and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "coeffs", tuple(c))

    @classmethod
    def const(cls, c, var: str = "q") -> "QPolynomial":
        return cls((c,), var)

    @classmethod
    def monomial(cls, k: int, c=1, var: str = "q") -> "QPolynomial":
        return cls((0,) * k + (c,), var)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __getitem__(self, k: int):
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else Fraction(0)

    def _lift(self, other) -> "QPolynomial":
        if isinstance(other, QPolynomial):
            return other
        return QPolynomial((other,), self.var)

    def __add__(self, other):
        o = self._lift(other)
        n = max(len(self.coeffs), len(o.coeffs))
        return QPolynomial(tuple(self[i] + o[i] for i in range(n)), self.var)

    __radd__ = __add__

    def __neg__(self):
        return QPolynomial(tuple(-c for c in self.coeffs), self.var)

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        if not isinstance(other, QPolynomial):
            return QPolynomial(tuple(c * other for c in self.coeffs), self.var)
        if not self.coeffs or not other.coeffs:
            return QPolynomial((), self.var)
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return QPolynomial(tuple(out), self.var)

    __rmul__ = __mul__

    def __truediv__(self, scalar):
        return QPolynomial(tuple(c / scalar for c in self.coeffs), self.var)

    def __pow__(self, n: int):
        out = QPolynomial.const(1, self.var)
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, QPolynomial):
            return self.coeffs == other.coeffs
        return self.coeffs == QPolynomial((other,)).coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def derivative(self) -> "QPolynomial":
        return QPolynomial(tuple(k * self.coeffs[k] for k in range(1, len(self.coeffs))), self.var)

    def __repr__(self):
        if not self.coeffs:
            return "0"
        terms = []
        for k, c in enumerate(self.coeffs):
            if c == 0:
                continue
            mono = "" if k == 0 else (self.var if k == 1 else f"{self.var}^{k}")
            terms.append(f"({c})" + (f"*{mono}" if mono else ""))
        return " + ".join(terms)


# ---------------------------------------------------------------------------
# Truncated power series


def _zero_like(x):
    if isinstance(x, QPolynomial):
        return QPolynomial((), x.var)
    return 0 * x


@dataclass(frozen=True)
class TruncatedSeries:
    """Power series ``c_0 + c_1 x + ... + c_K x^K`` known through order ``K``.

    Coefficients may be any ring elements supporting ``+``, ``*`` and scaling
    by a :class:`Fraction` (rationals, mpmath scalars, :class:`QPolynomial`).
    """

    coeffs: tuple

    def __post_init__(self):
        if not self.coeffs:
            raise ValueError("a truncated series needs at least the constant term")
        object.__setattr__(self, "coeffs", tuple(_frac(c) for c in self.coeffs))

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    @classmethod
    def from_function(cls, fn: Callable[[int], Any], order: int) -> "TruncatedSeries":
        return cls(tuple(fn(k) for k in range(order + 1)))

    @classmethod
    def one(cls, order: int, unit=Fraction(1)) -> "TruncatedSeries":
        z = _zero_like(unit)
        return cls((unit,) + (z,) * order)

    @classmethod
    def variable(cls, order: int) -> "TruncatedSeries":
        c = [Fraction(0)] * (order + 1)
        if order >= 1:
            c[1] = Fraction(1)
        return cls(tuple(c))

    def __getitem__(self, k: int):
        return self.coeffs[k]

    def truncate(self, order: int) -> "TruncatedSeries":
        if order > self.order:
            raise ValueError(f"cannot extend a series known to order {self.order} to {order}")
        return TruncatedSeries(self.coeffs[: order + 1])

    def __add__(self, other):
        if not isinstance(other, TruncatedSeries):
            c = list(self.coeffs)
            c[0] = c[0] + other
            return TruncatedSeries(tuple(c))
        k = min(self.order, other.order)
        return TruncatedSeries(tuple(self.coeffs[i] + other.coeffs[i] for i in range(k + 1)))

    __radd__ = __add__

    def __neg__(self):
        return TruncatedSeries(tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, TruncatedSeries):
            return TruncatedSeries(tuple(c * other for c in self.coeffs))
        k = min(self.order, other.order)
        a, b = self.coeffs, other.coeffs
        out = []
        for n in range(k + 1):
            acc = _zero_like(a[0] * b[0])
            for i in range(n + 1):
                acc = acc + a[i] * b[n - i]
            out.append(acc)
        return TruncatedSeries(tuple(out))

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, TruncatedSeries):
            return self * other.inverse()
        return TruncatedSeries(tuple(c / other for c in self.coeffs))

    def inverse(self) -> "TruncatedSeries":
        """Multiplicative inverse; the constant term must be invertible."""
        a = self.coeffs
        inv0 = 1 / a[0]
        out = [inv0]
        for n in range(1, self.order + 1):
            acc = _zero_like(a[0])
            for i in range(1, n + 1):
                acc = acc + a[i] * out[n - i]
            out.append(-acc * inv0)
        return TruncatedSeries(tuple(out))

    def derivative(self) -> "TruncatedSeries":
        """Term-wise derivative; the result is known one order less."""
        if self.order == 0:
            return TruncatedSeries((_zero_like(self.coeffs[0]),))
        return TruncatedSeries(tuple(k * self.coeffs[k] for k in range(1, self.order + 1)))

    def exp(self) -> "TruncatedSeries":
        """``exp`` of a series with vanishing constant term."""
        if self.coeffs[0] != 0:
            raise ValueError("exp needs a series with zero constant term")
        a = self.coeffs
        one = a[0] + 1 if isinstance(a[0], QPolynomial) else Fraction(1) + a[0] * 0
        out = [one]
        # n e_n = sum_{k=1}^{n} k a_k e_{n-k}
        for n in range(1, self.order + 1):
            acc = _zero_like(a[0])
            for k in range(1, n + 1):
                acc = acc + (k * a[k]) * out[n - k]
            out.append(acc / n)
        return TruncatedSeries(tuple(out))

    def log(self) -> "TruncatedSeries":
        """``log`` of a series with constant term 1."""
        a = self.coeffs
        if a[0] != 1:
            raise ValueError("log needs a series with constant term 1")
        out = [_zero_like(a[0])]
        # n l_n = n a_n - sum_{k=1}^{n-1} k l_k a_{n-k}
        for n in range(1, self.order + 1):
            acc = n * a[n]
            for k in range(1, n):
                acc = acc - (k * out[k]) * a[n - k]
            out.append(acc / n)
        return TruncatedSeries(tuple(out))

    def __pow__(self, e) -> "TruncatedSeries":
        """Power with integer or rational exponent.

        Non-negative integer exponents work for any series; other exponents
        need constant term 1.
        """
        if isinstance(e, int) and e >= 0:
            out = TruncatedSeries.one(self.order, self.coeffs[0] * 0 + 1)
            base = self
            while e:
                if e & 1:
                    out = out * base
                base = base * base
                e >>= 1
            return out
        return (self.log() * Fraction(e)).exp()

    def compose(self, inner: "TruncatedSeries") -> "TruncatedSeries":
        """``self(inner(x))``; ``inner`` must have zero constant term."""
        if inner.coeffs[0] != 0:
            raise ValueError("compose needs an inner series with zero constant term")
        k = min(self.order, inner.order)
        inner = inner.truncate(k)
        out = TruncatedSeries.one(k, self.coeffs[0] * 0 + 1) * self.coeffs[0]
        power = TruncatedSeries.one(k)
        for n in range(1, k + 1):
            power = power * inner
            out = out + power * self.coeffs[n]
        return out


# ---------------------------------------------------------------------------
# Dirichlet vectors


@dataclass(frozen=True)
class DirichletVector:
    """Truncated Dirichlet series ``sum_{d=1}^{D} a_d d^{-s}`` (``coeffs[d-1] = a_d``)."""

    coeffs: tuple

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(_frac(c) for c in self.coeffs))

    @property
    def size(self) -> int:
        return len(self.coeffs)

    def __getitem__(self, d: int):
        if d < 1:
            raise IndexError("Dirichlet vectors are indexed from d = 1")
        return self.coeffs[d - 1]

    @classmethod
    def from_function(cls, fn: Callable[[int], Any], size: int) -> "DirichletVector":
        return cls(tuple(fn(d) for d in range(1, size + 1)))

    @classmethod
    def unit(cls, size: int) -> "DirichletVector":
        return cls.from_function(lambda d: Fraction(int(d == 1)), size)

    @classmethod
    def zeta_shift(cls, k: int, size: int) -> "DirichletVector":
        """Coefficients of ``zeta(s - k)``, i.e. ``d^k``."""
        return cls.from_function(lambda d: Fraction(d) ** k, size)

    def __add__(self, other: "DirichletVector") -> "DirichletVector":
        _check_sizes(self, other)
        return DirichletVector(tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: "DirichletVector") -> "DirichletVector":
        _check_sizes(self, other)
        return DirichletVector(tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def scale(self, c) -> "DirichletVector":
        return DirichletVector(tuple(c * a for a in self.coeffs))

    def __mul__(self, other):
        if isinstance(other, DirichletVector):
            return dirichlet_mul(self, other)
        return self.scale(other)

    __rmul__ = __mul__

    def __truediv__(self, other: "DirichletVector") -> "DirichletVector":
        return dirichlet_div(self, other)


def _check_sizes(a: DirichletVector, b: DirichletVector) -> None:
    if a.size != b.size:
        raise ValueError(f"Dirichlet range mismatch: {a.size} vs {b.size}")


def dirichlet_mul(a: DirichletVector, b: DirichletVector) -> DirichletVector:
    """Dirichlet convolution ``(a*b)_d = sum_{m|d} a_m b_{d/m}``."""
    _check_sizes(a, b)
    n = a.size
    out = [Fraction(0)] * n
    for m in range(1, n + 1):
        am = a.coeffs[m - 1]
        if am == 0:
            continue
        for k in range(1, n // m + 1):
            out[m * k - 1] += am * b.coeffs[k - 1]
    return DirichletVector(tuple(out))


def dirichlet_div(a: DirichletVector, b: DirichletVector) -> DirichletVector:
    """Solve ``x * b = a`` exactly; requires ``b_1 != 0``."""
    _check_sizes(a, b)
    if b.coeffs[0] == 0:
        raise ZeroDivisionError("Dirichlet division needs a nonzero d=1 coefficient")
    n = a.size
    x = [Fraction(0)] * n
    b1 = b.coeffs[0]
    for d in range(1, n + 1):
        acc = a.coeffs[d - 1]
        for m in divisors(d)[:-1]:
            acc -= x[m - 1] * b.coeffs[d // m - 1]
        x[d - 1] = acc / b1
    return DirichletVector(tuple(x))


def falling_binomial(x, k: int):
    """Generalized binomial ``C(x, k) = x (x-1) ... (x-k+1) / k!`` for any ``x``."""
    if k < 0:
        return Fraction(0)
    num = Fraction(1)
    for i in range(k):
        num *= x - i
    return num / factorial(k)


def _is_seq(x) -> bool:
    return isinstance(x, (list, tuple))


def rational_str(x: Fraction) -> str:
    """Fixed serialization ``num/den`` (``num`` for integers)."""
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def parse_rational(s: str) -> Fraction:
    return Fraction(s.strip())


def mp_str(x, digits: int) -> str:
    """Fixed-width scientific rendering with an explicit digit count."""
    if isinstance(x, mpmath.mpc):
        return f"{mpmath.nstr(x.real, digits, min_fixed=1, max_fixed=0)}{'+' if x.imag >= 0 else '-'}{mpmath.nstr(abs(x.imag), digits, min_fixed=1, max_fixed=0)}j"
    return mpmath.nstr(big(x), digits, min_fixed=1, max_fixed=0)


def sum_exact(items: Iterable[Fraction]) -> Fraction:
    total = Fraction(0)
    for x in items:
        total += x
    return total


def parse_polynomial(text: str, var: str = "f") -> QPolynomial:
    """Parse an integer/rational polynomial expression such as ``-(f-2)^3/81``.

    Supports ``+ - * / ^`` (or ``**``), parentheses, integer literals and the
    single variable ``var``; division only by constants.
    """
    import ast

    tree = ast.parse(text.replace("^", "**").strip(), mode="eval")

    def ev(node):
        if isinstance(node, ast.Expression):
            return ev(node.body)
        if isinstance(node, ast.Constant) and isinstance(node.value, int):
            return QPolynomial.const(node.value, var)
        if isinstance(node, ast.Name) and node.id == var:
            return QPolynomial.monomial(1, 1, var)
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
            v = ev(node.operand)
            return -v if isinstance(node.op, ast.USub) else v
        if isinstance(node, ast.BinOp):
            a, b = ev(node.left), ev(node.right)
            if isinstance(node.op, ast.Add):
                return a + b
            if isinstance(node.op, ast.Sub):
                return a - b
            if isinstance(node.op, ast.Mult):
                return a * b
            if isinstance(node.op, ast.Div):
                if b.degree > 0:
                    raise ValueError(f"division by a non-constant in {text!r}")
                return a / b[0]
            if isinstance(node.op, ast.Pow):
                if b.degree > 0 or b[0].denominator != 1 or b[0] < 0:
                    raise ValueError(f"bad exponent in {text!r}")
                return a ** int(b[0])
        raise ValueError(f"unsupported syntax in polynomial {text!r}")

    return ev(tree)
