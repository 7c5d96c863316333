"""Resolved conifold: closed-form invariants, free energies and the multi-action tower."""

from __future__ import annotations

from fractions import Fraction

import mpmath

from ..arith import big, f_cs

__all__ = [
    "conifold_gw",
    "conifold_free_energy",
    "conifold_tower_prediction",
    "conifold_tower_term",
]


def conifold_gw(g: int, d: int) -> Fraction:
    """``N_{g,d} = f_cs(g) d^(2g-3)`` for ``g >= 2``."""
    if g < 2:
        raise ValueError("conifold closed form is used for g >= 2")
    if d < 1:
        raise ValueError("degree must be >= 1")
    return f_cs(g) * Fraction(d) ** (2 * g - 3)


def conifold_free_energy(g: int, t, tol=None, max_terms: int = 10**6):
    """``f_cs(g) sum_d d^(2g-3) e^(-dt)`` summed until a geometric tail bound is below ``tol``.

    ``tol`` is relative to the partial sum; by default ``10^-(dps+5)``.
    """
    if g < 2:
        raise ValueError("need g >= 2")
    t = big(t)
    if mpmath.re(t) <= 0:
        raise ValueError("the degree sum diverges for Re(t) <= 0")
    if tol is None:
        tol = mpmath.mpf(10) ** (-(mpmath.mp.dps + 5))
    k = 2 * g - 3
    q = mpmath.exp(-t)
    aq = abs(q)
    s = mpmath.mpf(0)
    for d in range(1, max_terms):
        term = mpmath.mpf(d) ** k * q**d
        s += term
        # ratio of consecutive magnitudes, decreasing in d
        r = (mpmath.mpf(d + 1) / d) ** k * aq
        if r < 1:
            nxt = abs(term) * r
            tail = nxt / (1 - r)
            if tail <= tol * abs(s):
                break
    else:
        raise RuntimeError("degree sum did not converge within max_terms")
    return big(f_cs(g)) * s


def conifold_tower_term(g: int, t, m: int, n: int = 1, include_two_loop: bool = True):
    """One ``(n, m)`` term: action ``A_m = 2 pi (t + 2 pi i m)`` at instanton number ``n``."""
    A = 2 * mpmath.pi * (big(t) + 2j * mpmath.pi * m)
    nA = n * A
    val = mpmath.gamma(2 * g - 1) / nA ** (2 * g - 1) * A / (2 * mpmath.pi**2 * n)
    if include_two_loop:
        val += mpmath.gamma(2 * g - 2) / nA ** (2 * g - 2) / (2 * mpmath.pi**2 * n**2)
    return val


def conifold_tower_prediction(g: int, t, mmax: int, include_two_loop: bool = True, nmax: int | None = 1):
    """Large-order prediction summed over ``|m| <= mmax`` and ``n <= nmax``.

    ``nmax=None`` sums every instanton number in closed form: both loop
    terms scale as ``n^(-2g)``, so the ``n``-sum is a factor ``zeta(2g)``.
    Real ``t`` gives a real result.
    """
    if g < 2:
        raise ValueError("need g >= 2")
    total = mpmath.mpf(0)
    for m in range(-mmax, mmax + 1):
        if nmax is None:
            total += conifold_tower_term(g, t, m, 1, include_two_loop) * mpmath.zeta(2 * g)
        else:
            for n in range(1, nmax + 1):
                total += conifold_tower_term(g, t, m, n, include_two_loop)
    if mpmath.im(big(t)) == 0:
        return mpmath.re(total)
    return total
