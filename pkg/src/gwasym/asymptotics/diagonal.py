"""Combined genus/degree growth: the P_h polynomials and the diagonal predictor."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb

import mpmath

from ..arith import QPolynomial, TruncatedSeries, bernoulli, big
from ..invariants import GwTable, IncompleteDataError
from .core import DEFAULT_ORDER, DataInsufficientError, GrowthFit, SequenceSample, richardson

__all__ = [
    "DiagPolySet",
    "gen_diag_polys",
    "bernoulli_poly",
    "diagonal_prediction",
    "diagonal_terms",
    "diagonal_sequence",
    "diagonal_action_extract",
    "q_window",
]


@dataclass(frozen=True)
class DiagPolySet:
    polys: tuple

    def __getitem__(self, h: int) -> QPolynomial:
        return self.polys[h]

    def __len__(self):
        return len(self.polys)

    @property
    def hmax(self) -> int:
        return len(self.polys) - 1


def bernoulli_poly(n: int, a) -> Fraction:
    """Bernoulli polynomial ``B_n(a)``."""
    return sum((comb(n, k) * bernoulli(k) * Fraction(a) ** (n - k) for k in range(n + 1)), Fraction(0))


@lru_cache(maxsize=None)
def gen_diag_polys(hmax: int) -> DiagPolySet:
    """Polynomials ``P_0..P_hmax`` of the expansion

    ``sqrt(2 pi) e^(2q-x) (x-1) (x-2q)^(x-3) ~ sum_h Gamma(x-3/2-h) 2^(-h) P_h(q)``.

    Both sides are divided by ``Gamma(x-3/2)`` and expanded in ``y = 1/x``.
    The left side becomes ``exp(S(y))`` through Stirling's series; the right
    side is ``sum_h 2^(-h) P_h y^h / prod_{i=1}^{h} (1 - (3/2+i) y)``.
    """
    K = hmax
    q = QPolynomial.monomial(1, 1, "q")
    two_q = q * 2
    coeffs = [QPolynomial((), "q")]
    a = Fraction(-3, 2)
    for k in range(1, K + 1):
        c = -(two_q ** (k + 1)) / (k + 1) + (two_q**k) * Fraction(3, k) - Fraction(1, k)
        c = c - Fraction((-1) ** (k + 1)) * bernoulli_poly(k + 1, a) / (k * (k + 1))
        coeffs.append(c)
    lhs = TruncatedSeries(tuple(coeffs)).exp()
    polys: list[QPolynomial] = []
    rest = lhs
    for h in range(K + 1):
        Ph = rest[h] * (2**h)
        polys.append(Ph)
        # subtract 2^-h P_h y^h / prod(1 - c_i y)
        basis = [Fraction(0)] * h + [Fraction(1)] + [Fraction(0)] * (K - h)
        series = TruncatedSeries(tuple(basis))
        for i in range(1, h + 1):
            ci = Fraction(3, 2) + i
            inv = TruncatedSeries(tuple(ci**n for n in range(K + 1)))
            series = series * inv
        term = TruncatedSeries(tuple(Ph * (c / 2**h) for c in series.coeffs))
        rest = rest - term
    return DiagPolySet(tuple(QPolynomial(p.coeffs, "q") for p in polys))


def q_window(t: int) -> range:
    """Integer shifts allowed on the line ``g = (t/2) d + q``."""
    w = int(mpmath.floor(mpmath.mpf(t) / 4 + mpmath.mpf(3) / 2))
    lo = int(mpmath.floor(mpmath.mpf(t) / 4 - mpmath.mpf(3) / 2))
    return range(-lo, w + 1)


def _check_line(t, q, g):
    if int(t) != t or int(t) % 2:
        raise ValueError(f"t must be an even integer on the diagonal grid, got {t}")
    d2 = 2 * (g - q)
    if d2 % int(t):
        raise ValueError(f"g={g}, q={q}, t={t} does not give an integer degree")
    return (g - q) * 2 // int(t)


def diagonal_terms(n01: int, t, q, g: int, hmax: int) -> list:
    """Individual ``h`` terms of the diagonal prediction."""
    P = gen_diag_polys(hmax)
    t = big(t)
    A = 2 * mpmath.pi * t
    out = []
    for h in range(hmax + 1):
        x = 2 * g - mpmath.mpf(3) / 2 - h
        term = mpmath.gamma(x) / A**x * n01 * t ** (mpmath.mpf(3) / 2 - h)
        term /= mpmath.mpf(2) ** (2 * h + 1) * mpmath.pi ** (h + 2)
        out.append(term * big(P[h](Fraction(q))))
    return out


def diagonal_prediction(n01: int, t, q, g: int, hmax: int):
    """Predicted ``N_{g,d} Q^d`` on the line ``g = (t/2) d + q`` (``t`` even)."""
    _check_line(t, q, g)
    return mpmath.fsum(diagonal_terms(n01, t, q, g, hmax))


def diagonal_sequence(gw: GwTable, t: int, q: int) -> SequenceSample:
    """``N_{g,d} Q^d`` with ``Q = e^-t`` along the diagonal, indexed by ``d``."""
    if int(t) % 2:
        raise ValueError("t must be an even integer")
    half = int(t) // 2
    pts = []
    for d in gw.degrees:
        g = half * d + q
        if g >= 0 and gw.has(g, d):
            pts.append((d, big(gw.N(g, d)) * mpmath.exp(-d * mpmath.mpf(t))))
    # keep the longest run of consecutive degrees ending at the top
    run = []
    for d, v in reversed(pts):
        if run and run[-1][0] != d + 1:
            break
        run.append((d, v))
    return SequenceSample(tuple(reversed(run)))


def diagonal_action_extract(gw: GwTable, t: int, q: int, order: int = DEFAULT_ORDER) -> GrowthFit:
    """Instanton action from the diagonal sequence ``s_d = N_{g,d} Q^d``.

    With ``s ~ Gamma(2g-3/2) A^-(2g-3/2)`` and ``g`` stepping by ``t/2``,
    ``A^t ~ Gamma(2g+t-3/2)/Gamma(2g-3/2) * s_d/s_{d+1}``; the ``t``-th root
    is Richardson-accelerated in ``d``.
    """
    seq = diagonal_sequence(gw, t, q)
    if len(seq) < 5:
        raise DataInsufficientError(f"only {len(seq)} points on the line g = {t // 2} d + {q}")
    half = int(t) // 2
    vals = dict(seq.points)
    est = []
    for d in seq.indices[:-1]:
        g = half * d + q
        x = 2 * g - mpmath.mpf(3) / 2
        ratio = mpmath.exp(mpmath.loggamma(x + t) - mpmath.loggamma(x)) * vals[d] / vals[d + 1]
        est.append((d, mpmath.root(ratio, int(t))))
    raw = SequenceSample(tuple(est))
    if len(raw) < order + 2:
        raise DataInsufficientError("not enough ratios for the requested Richardson order")
    acc = richardson(raw, order)
    prev = richardson(raw, order - 1) if order > 0 else raw
    val = acc.last()
    return GrowthFit(
        "diagonal_action",
        value=val,
        uncertainty=abs(val - prev.last()),
        rate=val,
        order=order,
        extras={"t": t, "q": q, "points": len(seq)},
        trace={"raw": raw, "richardson": acc},
    )
