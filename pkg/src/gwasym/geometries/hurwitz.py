"""Simple Hurwitz numbers of P^1: Laguerre formula, exact character oracle, Toda check."""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import comb, factorial

import mpmath

from ..arith import TruncatedSeries, falling_binomial
from .local_curve import XP_GENERA, xp_coefficients

__all__ = [
    "hurwitz_a",
    "hurwitz_alpha",
    "laguerre_l",
    "hurwitz_gw",
    "hurwitz_number",
    "hurwitz_closed",
    "hurwitz_connected_exact",
    "hurwitz_gw_exact",
    "hurwitz_large_genus_terms",
    "hurwitz_large_genus_prediction",
    "hurwitz_genus01",
    "hurwitz_table",
    "leading_coefficient",
    "toda_residual",
]


@lru_cache(maxsize=None)
def hurwitz_a(g: int, n: int) -> Fraction:
    """``a^H_{g,n}``: ``(-1)^n`` times the ``f^(n-4(g-1))`` coefficient of ``a_{g,n}(f)`` at large ``f``."""
    co = xp_coefficients(g)
    if not 1 <= n <= 5 * (g - 1):
        return Fraction(0)
    num, den = co.numerators[n - 1], co.denominators[n - 1]
    # den is c * f^m
    if any(den[i] != 0 for i in range(den.degree)):
        raise ValueError(f"a_{{{g},{n}}}: denominator is not a monomial in f")
    m, c = den.degree, den[den.degree]
    target = n - 4 * (g - 1)
    if num.degree - m > target:
        raise ValueError(f"a_{{{g},{n}}}(f) grows faster than f^{target}")
    sign = 1 if n % 2 == 0 else -1
    return sign * num[target + m] / c


@lru_cache(maxsize=None)
def hurwitz_alpha(g: int, k: int) -> Fraction:
    """``alpha^H_{g,k}`` with ``(-1)^k alpha^H_{g,k} = sum_i C(i,k) a^H_{g,i}``."""
    s = sum((comb(i, k) * hurwitz_a(g, i) for i in range(k, 5 * (g - 1) + 1)), Fraction(0))
    return s if k % 2 == 0 else -s


def laguerre_l(n: int, a, x):
    """Associated Laguerre polynomial by its finite sum, any parameter ``a``."""
    s = 0
    for i in range(n + 1):
        s += (-1) ** i * falling_binomial(n + a, n - i) * Fraction(x) ** i / factorial(i)
    return s


def hurwitz_gw(g: int, d: int) -> Fraction:
    """``N^H_{g,d}`` from the Laguerre formula; ``g`` in the bundled range 2..4."""
    if g not in XP_GENERA:
        raise ValueError(f"bundled Hurwitz coefficients cover g in {XP_GENERA}, got g={g}")
    if d < 1:
        raise ValueError("degree must be >= 1")
    gh = 5 * (g - 1)
    s = Fraction(0)
    for k in range(0, 3 * (g - 1) + 1):
        s += hurwitz_alpha(g, k) * (gh - k) * laguerre_l(d - 1, k - d - gh, d)
    # (-1)^(d-1), as in the local-curve formula it descends from
    return s * (-1) ** (d - 1) / d


def hurwitz_number(g: int, d: int) -> Fraction:
    """Connected simple Hurwitz number ``N^H_{g,d} (2g+2d-2)!`` from the Laguerre formula."""
    return hurwitz_gw(g, d) * factorial(2 * g + 2 * d - 2)


def hurwitz_closed(g: int, d: int) -> Fraction:
    """Tabulated closed forms of the connected Hurwitz numbers for ``d = 2, 3, 4``."""
    if d == 2:
        return Fraction(1, 2)
    if d == 3:
        return Fraction(3) ** (2 * g - 2) / 2
    if d == 4:
        return Fraction((2 ** (2 * g + 2) - 1) * (3 ** (2 * g + 4) - 1), 2)
    raise ValueError(f"closed forms exist only for d in (2, 3, 4), got {d}")


# ---------------------------------------------------------------------------
# Exact oracle via characters of the symmetric group


def _partitions(n: int, maxpart: int | None = None):
    if maxpart is None:
        maxpart = n
    if n == 0:
        yield ()
        return
    for k in range(min(n, maxpart), 0, -1):
        for rest in _partitions(n - k, k):
            yield (k,) + rest


def _dim(lam: tuple) -> int:
    n = sum(lam)
    conj = [sum(1 for x in lam if x > j) for j in range(lam[0])] if lam else []
    hooks = 1
    for i, row in enumerate(lam):
        for j in range(row):
            hooks *= row - j + conj[j] - i - 1
    return factorial(n) // hooks


def _content_sum(lam: tuple) -> int:
    return sum(j - i for i, row in enumerate(lam) for j in range(row))


# Exponential sums sum_k c_k exp(k b), stored as {k: c}.


def _emul(a: dict, b: dict) -> dict:
    out: dict = {}
    for ka, ca in a.items():
        for kb, cb in b.items():
            out[ka + kb] = out.get(ka + kb, 0) + ca * cb
    return {k: v for k, v in out.items() if v != 0}


def _eadd(a: dict, b: dict, s=1) -> dict:
    out = dict(a)
    for k, v in b.items():
        out[k] = out.get(k, 0) + s * v
    return {k: v for k, v in out.items() if v != 0}


@lru_cache(maxsize=None)
def _connected_exp(dmax: int) -> tuple:
    """Connected generating function, ``Q^d`` coefficient as an exponential sum in ``b``."""
    Z = [{0: Fraction(1)}]
    for d in range(1, dmax + 1):
        z: dict = {}
        for lam in _partitions(d):
            w = Fraction(_dim(lam), factorial(d)) ** 2
            k = _content_sum(lam)
            z[k] = z.get(k, 0) + w
        Z.append(z)
    # log Z with Z_0 = 1: n L_n = n Z_n - sum_{k=1}^{n-1} k L_k Z_{n-k}
    L = [{}]
    for n in range(1, dmax + 1):
        acc = {k: n * v for k, v in Z[n].items()}
        for k in range(1, n):
            acc = _eadd(acc, _emul({e: k * c for e, c in L[k].items()}, Z[n - k]), -1)
        L.append({e: c / n for e, c in acc.items()})
    return tuple(L)


def hurwitz_connected_exact(g: int, d: int) -> Fraction:
    """Connected simple Hurwitz number with ``2g+2d-2`` simple branch points (Frobenius formula)."""
    r = 2 * g + 2 * d - 2
    if r < 0:
        return Fraction(0)
    L = _connected_exp(d)[d]
    return sum((c * Fraction(k) ** r for k, c in L.items()), Fraction(0))


def hurwitz_gw_exact(g: int, d: int) -> Fraction:
    """``N^H_{g,d}`` from the character oracle; valid for every genus."""
    return hurwitz_connected_exact(g, d) / factorial(2 * g + 2 * d - 2)


# ---------------------------------------------------------------------------
# Large-genus truncation


def hurwitz_large_genus_terms(g: int, d: int) -> list[Fraction]:
    """The four leading large-genus terms of the connected Hurwitz number ``H_{g,d}``."""
    r = 2 * d + 2 * g - 2
    fd, fd1, fd2 = factorial(d), factorial(d - 1), factorial(d - 2)
    return [
        Fraction(2, fd**2) * Fraction(d * (d - 1), 2) ** r,
        -Fraction(2, fd1**2) * Fraction((d - 1) * (d - 2), 2) ** r,
        Fraction(2, d * d * fd2**2) * Fraction(d * (d - 3), 2) ** r,
        -Fraction(1, 2 * fd2**2) * Fraction(d * d - 5 * d + 8, 2) ** r,
    ]


def hurwitz_large_genus_prediction(g: int, d: int, nterms: int):
    """Partial sum of the first ``nterms`` (1..4) large-genus terms of ``H_{g,d}``, ``d >= 5``."""
    if d < 5:
        raise ValueError("the large-genus series is used for d >= 5; lower degrees truncate")
    if not 1 <= nterms <= 4:
        raise ValueError("nterms must lie in 1..4")
    s = sum(hurwitz_large_genus_terms(g, d)[:nterms], Fraction(0))
    return mpmath.mpf(s.numerator) / s.denominator


# ---------------------------------------------------------------------------
# Low genus from the local-curve closed forms


def leading_coefficient(values: list, xs: list) -> Fraction:
    """Top coefficient of the unique polynomial through ``len(xs)`` points."""
    s = Fraction(0)
    for i, (xi, yi) in enumerate(zip(xs, values)):
        den = Fraction(1)
        for j, xj in enumerate(xs):
            if j != i:
                den *= xi - xj
        s += Fraction(yi) / den
    return s


@lru_cache(maxsize=None)
def hurwitz_genus01(g: int, d: int) -> Fraction:
    """``N^H_{g,d}`` for ``g = 0, 1`` as the top ``p``-coefficient of the local-curve closed forms."""
    from .local_curve import xp_gw_poly

    deg = 2 * g + 2 * d - 2
    xs = [Fraction(3 + i) for i in range(deg + 1)]
    return leading_coefficient([xp_gw_poly(g, d, x) for x in xs], xs)


def hurwitz_table(gmax: int, dmax: int) -> dict:
    """``N^H_{g,d}`` for ``g <= gmax <= 4``: closed-form limits at ``g <= 1``, Laguerre above."""
    out = {}
    for g in range(gmax + 1):
        for d in range(1, dmax + 1):
            out[(g, d)] = hurwitz_genus01(g, d) if g < 2 else hurwitz_gw(g, d)
    return out


# ---------------------------------------------------------------------------
# Toda equation


def toda_residual(orderQ: int, orderG: int, table: dict | None = None) -> Fraction:
    """Largest residual coefficient of the Toda equation for the Hurwitz free energy.

    Checks ``exp(F(t+u) - 2F(t) + F(t-u)) = u^2 e^t d_t^2 F`` with
    ``F = sum_g u^(2g-2) sum_d N^H_{g,d} Q^d`` through ``Q^orderQ`` and
    ``u^orderG`` (both sides divided by ``u^2 Q``). ``table`` maps
    ``(g, d)`` to invariants; by default the bundled values are used.
    """
    hmax = orderG // 2 + 1
    dmax = orderQ + 1
    if table is None:
        if hmax > max(XP_GENERA):
            raise ValueError(f"bundled Hurwitz data stop at genus {max(XP_GENERA)}")
        table = hurwitz_table(hmax, dmax)
    for h in range(hmax + 1):
        for d in range(1, dmax + 1):
            if (h, d) not in table:
                raise ValueError(f"Toda check needs N^H_{{{h},{d}}}")
    U = orderG + 2

    # E = F(t+u) - 2F(t) + F(t-u) = sum N Q^d sum_{k>=1} 2 d^{2k} u^{2h-2+2k}/(2k)!
    E = [[Fraction(0)] * (U + 1) for _ in range(dmax + 1)]
    for (h, d), n in table.items():
        if d > dmax or n == 0:
            continue
        for k in range(1, U + 1):
            e = 2 * h - 2 + 2 * k
            if e > U:
                break
            E[d][e] += Fraction(n) * 2 * Fraction(d) ** (2 * k) / factorial(2 * k)

    def pmul(a, b):
        out = [Fraction(0)] * (U + 1)
        for i, x in enumerate(a):
            if x:
                for j in range(U + 1 - i):
                    out[i + j] += x * b[j]
        return out

    # exp(E) in Q; n X_n = sum_k k E_k X_{n-k}
    X = [[Fraction(0)] * (U + 1) for _ in range(dmax + 1)]
    X[0][0] = Fraction(1)
    for n in range(1, dmax + 1):
        acc = [Fraction(0)] * (U + 1)
        for k in range(1, n + 1):
            for i, v in enumerate(pmul(E[k], X[n - k])):
                acc[i] += k * v
        X[n] = [a / n for a in acc]

    # exp(E) = sum N_{h,d} d^2 u^{2h} Q^{d-1}
    worst = Fraction(0)
    for m in range(orderQ + 1):
        for e in range(orderG + 1):
            rhs = Fraction(0)
            if e % 2 == 0:
                rhs = Fraction(table.get((e // 2, m + 1), 0)) * (m + 1) ** 2
            worst = max(worst, abs(X[m][e] - rhs))
    return worst
