"""Dominant degrees in free energies and linear fits of their genus dependence."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

import mpmath

from ..arith import big
from ..invariants import GwTable
from .core import DataInsufficientError

__all__ = [
    "SaddleScan",
    "LineFit",
    "SaddleFit",
    "saddle_scan",
    "least_squares_line",
    "saddle_linear_fit",
    "saddle_growth_prediction",
]

DEFAULT_THRESHOLD = mpmath.mpf("1e-3")


@dataclass(frozen=True)
class SaddleScan:
    """Profile ``d -> |N_{g,d} Q^d| / |F*_g|`` and its maxima.

    ``refined`` is the three-point parabola vertex on ``log`` of the profile
    around ``argmax``; ``curvature`` its second difference; ``a2 = -x0 * curvature``.
    ``refined_poly`` is the stationary point of a seven-point interpolant,
    far less biased than the parabola vertex.
    """

    g: int
    t: object
    profile: dict
    argmax: int
    peaks: tuple
    refined: object
    curvature: object
    a2: object
    boundary: bool
    refined_poly: object = None


def _refine_poly(logs: dict, d: int, half: int = 3, steps: int = 12):
    """Stationary point of the interpolant through ``log`` values at ``d-half..d+half``.

    Falls back to fewer points near the ends of the table; ``None`` if fewer
    than five are available.
    """
    while half >= 2 and any(d + k not in logs for k in range(-half, half + 1)):
        half -= 1
    if half < 2:
        return None
    ks = range(-half, half + 1)
    mat = mpmath.matrix([[mpmath.mpf(k) ** j for j in range(len(ks))] for k in ks])
    c = mpmath.lu_solve(mat, mpmath.matrix([logs[d + k] for k in ks]))
    coeffs = [c[j] for j in range(len(ks))]
    x = mpmath.mpf(0)
    for _ in range(steps):
        d1 = mpmath.fsum(j * coeffs[j] * x ** (j - 1) for j in range(1, len(coeffs)))
        d2 = mpmath.fsum(j * (j - 1) * coeffs[j] * x ** (j - 2) for j in range(2, len(coeffs)))
        if d2 == 0:
            return None
        x -= d1 / d2
    return d + x


def _refine(logs: dict, d: int):
    if d - 1 not in logs or d + 1 not in logs:
        return mpmath.mpf(d), None
    lm, l0, lp = logs[d - 1], logs[d], logs[d + 1]
    curv = lm - 2 * l0 + lp
    if curv == 0:
        return mpmath.mpf(d), curv
    return d + (lm - lp) / (2 * curv), curv


def saddle_scan(gw: GwTable, g: int, t, threshold=DEFAULT_THRESHOLD) -> SaddleScan:
    col = gw.column(g)
    if len(col) < 3:
        raise DataInsufficientError(f"genus {g} has {len(col)} degrees; need at least 3")
    t = big(t)
    terms = {d: abs(big(v) * mpmath.exp(-d * t)) for d, v in col.items()}
    total = abs(mpmath.fsum(big(v) * mpmath.exp(-d * t) for d, v in col.items()))
    if total == 0:
        total = max(terms.values())
    prof = {d: v / total for d, v in sorted(terms.items())}
    ds = sorted(prof)
    best = max(prof.values())
    argmax = min(d for d in ds if prof[d] == best)
    peaks = []
    for i, d in enumerate(ds):
        left = prof[ds[i - 1]] if i > 0 else None
        right = prof[ds[i + 1]] if i + 1 < len(ds) else None
        if (left is None or prof[d] > left) and (right is None or prof[d] >= right) and prof[d] >= threshold * best:
            peaks.append(d)
    logs = {d: mpmath.log(v) for d, v in prof.items() if v > 0}
    x0, curv = _refine(logs, argmax)
    a2 = -x0 * curv if curv is not None else None
    return SaddleScan(g, t, prof, argmax, tuple(peaks), x0, curv, a2, argmax in (ds[0], ds[-1]), _refine_poly(logs, argmax))


@dataclass(frozen=True)
class LineFit:
    """``y = intercept + slope * x`` with standard errors and ``r^2``."""

    intercept: object
    slope: object
    intercept_se: object
    slope_se: object
    r2: object
    residuals: tuple


def least_squares_line(xs: list, ys: list) -> LineFit:
    n = len(xs)
    if n < 2:
        raise DataInsufficientError("a line fit needs at least two points")
    xs = [big(x) for x in xs]
    ys = [big(y) for y in ys]
    mx = mpmath.fsum(xs) / n
    my = mpmath.fsum(ys) / n
    sxx = mpmath.fsum((x - mx) ** 2 for x in xs)
    if sxx == 0:
        raise ValueError("degenerate design: all abscissae equal")
    sxy = mpmath.fsum((x - mx) * (y - my) for x, y in zip(xs, ys))
    slope = sxy / sxx
    icpt = my - slope * mx
    res = tuple(y - icpt - slope * x for x, y in zip(xs, ys))
    sse = mpmath.fsum(r * r for r in res)
    syy = mpmath.fsum((y - my) ** 2 for y in ys)
    s2 = sse / (n - 2) if n > 2 else mpmath.mpf(0)
    return LineFit(
        intercept=icpt,
        slope=slope,
        intercept_se=mpmath.sqrt(s2 * (1 / mpmath.mpf(n) + mx**2 / sxx)),
        slope_se=mpmath.sqrt(s2 / sxx),
        r2=1 - sse / syy if syy != 0 else mpmath.mpf(1),
        residuals=res,
    )


@dataclass
class SaddleFit:
    """Per-``t`` lines ``d = a0 + a1 g`` and the fits of ``1/a1`` and ``1/a0`` against ``t``."""

    per_t: dict
    inv_a1: LineFit
    inv_a0: LineFit
    a2: dict = field(default_factory=dict)
    scans: dict = field(default_factory=dict)


def _pick(scan: SaddleScan, peak: str, refine: str):
    if peak == "global" or len(scan.peaks) <= 1:
        d = scan.argmax
    elif peak in ("lowest", "highest"):
        d = min(scan.peaks) if peak == "lowest" else max(scan.peaks)
    else:
        raise ValueError(f"unknown peak selector {peak!r}")
    logs = {k: mpmath.log(v) for k, v in scan.profile.items() if v > 0}
    if refine == "poly":
        x0 = _refine_poly(logs, d)
        if x0 is not None:
            return x0
    elif refine != "parabola":
        raise ValueError(f"unknown refinement {refine!r}")
    return _refine(logs, d)[0]


def saddle_linear_fit(
    gw: GwTable, genera: Iterable[int], ts: Iterable, peak: str = "global", refine: str = "poly"
) -> SaddleFit:
    """Fit the dominant degree linearly in ``g`` at each ``t``, then ``1/a1``, ``1/a0`` linearly in ``t``.

    ``peak`` selects ``global``, ``lowest`` or ``highest`` among the local
    maxima; ``refine`` is ``poly`` (default) or ``parabola``.
    """
    genera = list(genera)
    ts = list(ts)
    if len(genera) < 5:
        raise DataInsufficientError("saddle fit needs at least 5 genera per t")
    if len(ts) < 4:
        raise DataInsufficientError("saddle fit needs at least 4 values of t")
    per_t, a2s, scans = {}, {}, {}
    for t in ts:
        rows = []
        for g in genera:
            sc = saddle_scan(gw, g, t)
            scans[(g, t)] = sc
            rows.append((g, _pick(sc, peak, refine), sc.a2))
        line = least_squares_line([r[0] for r in rows], [r[1] for r in rows])
        per_t[t] = line
        vals = [r[2] for r in rows if r[2] is not None]
        a2s[t] = mpmath.fsum(vals) / len(vals) if vals else None
    inv_a1 = least_squares_line(ts, [1 / per_t[t].slope for t in ts])
    inv_a0 = least_squares_line(ts, [1 / per_t[t].intercept for t in ts])
    return SaddleFit(per_t, inv_a1, inv_a0, a2s, scans)


def saddle_growth_prediction(g: int, a1, a2, beta, A, F1):
    """``Gamma(2g-beta-1/2)/A^(2g-beta-1/2) (a2/(pi a1 A))^(1/2) F1`` at the dominant degree."""
    x = 2 * g - big(beta) - mpmath.mpf(1) / 2
    A = big(A)
    return mpmath.gamma(x) / A**x * mpmath.sqrt(big(a2) / (mpmath.pi * big(a1) * A)) * big(F1)
