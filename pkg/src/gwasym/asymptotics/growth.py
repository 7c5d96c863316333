"""Fixed-genus growth fits in the degree and the large-genus action estimate."""

from __future__ import annotations

from typing import Iterable, Optional, Union

import mpmath

from ..arith import big
from ..invariants import GwTable
from .core import DEFAULT_ORDER, DataInsufficientError, GrowthFit, SequenceSample, richardson

__all__ = [
    "degree_column",
    "fit_exponential_rate",
    "power_sequence",
    "eliminated_power_sequence",
    "fit_power_exponent",
    "log_sequence",
    "fit_log_exponent",
    "action_sequences",
    "estimate_action_from_fg",
]

Source = Union[GwTable, SequenceSample, dict]


def degree_column(source: Source, g: Optional[int] = None) -> dict:
    """``{d: value}`` at working precision from a table column or a ready sequence."""
    if isinstance(source, GwTable):
        if g is None:
            raise ValueError("a genus is required when fitting a GW table")
        col = source.column(g)
        if not col:
            raise DataInsufficientError(f"no invariants at genus {g}")
        return {d: big(v) for d, v in col.items()}
    if isinstance(source, SequenceSample):
        return {d: big(v) for d, v in source.points}
    return {int(d): big(v) for d, v in source.items()}


def _estimate(raw: SequenceSample, order: int):
    if len(raw) < order + 2:
        raise DataInsufficientError(f"{len(raw)} points are too few for Richardson order {order}")
    acc = richardson(raw, order)
    prev = richardson(raw, order - 1) if order > 0 else raw
    return acc, acc.last(), abs(acc.last() - prev.last())


def _contiguous(col: dict, drange: Optional[Iterable[int]]) -> list[int]:
    ds = sorted(col) if drange is None else [d for d in drange if d in col]
    if drange is not None and len(ds) != len(list(drange)):
        missing = sorted(set(drange) - set(ds))
        raise DataInsufficientError(f"degrees {missing[:5]} missing from the data")
    for a, b in zip(ds, ds[1:]):
        if b != a + 1:
            raise DataInsufficientError(f"degree range has a gap between {a} and {b}")
    return ds


def fit_exponential_rate(source: Source, g: Optional[int] = None, drange=None, order: int = DEFAULT_ORDER) -> GrowthFit:
    """Exponential growth rate from consecutive ratios ``N_{d+1}/N_d``.

    The magnitude comes from Richardson on ``log|N_{d+1}/N_d|``. The phase per
    unit degree comes from the sign pattern: constant sign gives 0, strict
    alternation gives ``-pi``, matching ``e^{d t_c}`` with ``Im t_c = -pi``.
    """
    col = degree_column(source, g)
    ds = _contiguous(col, drange)
    if any(col[d] == 0 for d in ds):
        bad = next(d for d in ds if col[d] == 0)
        raise ValueError(f"zero invariant at degree {bad}")
    raw = SequenceSample(tuple((d, mpmath.log(abs(col[d + 1] / col[d]))) for d in ds[:-1]))
    acc, mag, err = _estimate(raw, order)
    flips = sum(1 for d in ds[:-1] if mpmath.sign(col[d]) != mpmath.sign(col[d + 1]))
    phase = -mpmath.pi * mpmath.mpf(flips) / (len(ds) - 1)
    rate = mag if flips == 0 else mpmath.mpc(mag, phase)
    return GrowthFit(
        "exponential_rate",
        value=rate,
        uncertainty=err,
        rate=rate,
        phase=phase,
        order=order,
        extras={"sign_flips": flips, "steps": len(ds) - 1},
        trace={"raw": raw, "richardson": acc},
    )


def _fd(col: dict, d: int, tc):
    r = mpmath.exp(-tc) * col[d + 1] / col[d]
    return mpmath.re(d * (r - 1))


def power_sequence(col: dict, tc, ls: Iterable[int]) -> SequenceSample:
    """``2 f_{l^2} - f_l`` with ``f_d = d (e^{-t_c} N_{d+1}/N_d - 1)``.

    For ``N ~ C d^p e^{d t_c} (log d)^delta`` the ``1/log d`` terms cancel and
    the combination tends to ``+p``.
    """
    pts = []
    for l in ls:
        pts.append((l, 2 * _fd(col, l * l, tc) - _fd(col, l, tc)))
    return SequenceSample(tuple(pts))


def _square_grid(col: dict, need_next: bool, dgrid=None) -> list[int]:
    ls = []
    l = 2
    top = max(col)
    while l * l + (1 if need_next else 0) <= top:
        ok = all(x in col for x in ((l, l + 1, l * l, l * l + 1) if need_next else (l, l * l)))
        if ok:
            ls.append(l)
        l += 1
    if dgrid is not None:
        ls = [l for l in ls if l in set(dgrid)]
    # longest consecutive run ending at the top
    run = []
    for l in reversed(ls):
        if run and run[-1] != l + 1:
            break
        run.append(l)
    return list(reversed(run))


def eliminated_power_sequence(col: dict, tc, ls: Iterable[int]) -> SequenceSample:
    """Power of ``d`` from the log-differences at ``d = l`` and ``d = l^2``.

    With ``y_d = log|N_d| - d Re t_c`` the model ``C d^p (log d)^delta`` gives
    ``y_{d+1} - y_d = p log(1+1/d) + delta log(log(d+1)/log d)``. The two
    equations at ``l`` and ``l^2`` are solved for ``p``; to first order in
    ``1/d`` this is the combination ``2 f_{l^2} - f_l``.
    """
    def y(d):
        return mpmath.log(abs(col[d])) - d * mpmath.re(tc)

    pts = []
    for l in ls:
        rows = []
        for d in (l, l * l):
            rows.append((mpmath.log1p(mpmath.mpf(1) / d), mpmath.log(mpmath.log(d + 1) / mpmath.log(d)), y(d + 1) - y(d)))
        (u1, v1, w1), (u2, v2, w2) = rows
        det = u1 * v2 - u2 * v1
        pts.append((l, (w1 * v2 - w2 * v1) / det))
    return SequenceSample(tuple(pts))


def fit_power_exponent(
    source: Source,
    g: Optional[int],
    t_c,
    dgrid=None,
    order: int = DEFAULT_ORDER,
    method: str = "eliminate",
) -> GrowthFit:
    """Power of ``d`` in ``N_{g,d}`` (expected ``2g-3``), Richardson in ``l`` on pairs ``(l, l^2)``.

    ``method="eliminate"`` removes the ``(log d)^delta`` factor exactly;
    ``method="combination"`` uses ``2 f_{l^2} - f_l``, which leaves
    ``O(1/(l log l))`` terms that Richardson does not remove.
    """
    col = degree_column(source, g)
    ls = _square_grid(col, True, dgrid)
    if len(ls) < order + 2:
        raise DataInsufficientError("not enough (l, l^2) pairs; extend the degree range")
    if method == "eliminate":
        ls = [l for l in ls if l >= 2]
        raw = eliminated_power_sequence(col, big(t_c), ls)
    elif method == "combination":
        raw = power_sequence(col, big(t_c), ls)
    else:
        raise ValueError(f"unknown method {method!r}")
    acc, val, err = _estimate(raw, order)
    return GrowthFit(
        "power_exponent", value=val, uncertainty=err, power=val, order=order,
        extras={"method": method}, trace={"raw": raw, "richardson": acc},
    )


def log_sequence(col: dict, tc, power, ls: Iterable[int]) -> SequenceSample:
    """``log_2( e^{-t_c (l^2 - l)} N_{l^2} / (N_l l^power) )``, which tends to ``delta``."""
    pts = []
    for l in ls:
        r = mpmath.exp(-tc * (l * l - l)) * col[l * l] / (col[l] * mpmath.mpf(l) ** power)
        pts.append((l, mpmath.re(mpmath.log(r)) / mpmath.log(2)))
    return SequenceSample(tuple(pts))


def fit_log_exponent(source: Source, g: Optional[int], t_c, power, dgrid=None, order: int = DEFAULT_ORDER) -> GrowthFit:
    """Exponent ``delta`` of ``(log d)^delta`` from the ratio ``N_{l^2}/N_l``."""
    col = degree_column(source, g)
    ls = _square_grid(col, False, dgrid)
    if len(ls) < order + 2:
        raise DataInsufficientError("not enough (l, l^2) pairs; extend the degree range")
    raw = log_sequence(col, big(t_c), big(power), ls)
    acc, val, err = _estimate(raw, order)
    return GrowthFit("log_exponent", value=val, uncertainty=err, log_power=val, order=order, trace={"raw": raw, "richardson": acc})


def action_sequences(fseq: SequenceSample, complex_mode: bool = False):
    """Per-genus ``(A^2, beta)`` from three consecutive ``F_g``.

    With ``F_g ~ S Gamma(2g-beta)/A^(2g-beta)`` and ``x = 2g - beta``,
    ``F_{g+1}/F_g = x(x+1)/A^2`` and ``F_{g+2}/F_{g+1} = (x+2)(x+3)/A^2``;
    the pair fixes ``x`` through a quadratic, exact on the pure model.
    """
    vals = dict(fseq.points)
    a2, beta = [], []
    for g in fseq.indices:
        if g + 1 not in vals or g + 2 not in vals:
            continue
        r1 = vals[g + 1] / vals[g]
        r2 = vals[g + 2] / vals[g + 1]
        if not complex_mode and (mpmath.re(r1) <= 0 or mpmath.re(r2) <= 0):
            raise ValueError(f"F_g changes sign near g={g}; enable complex mode")
        k = r2 / r1
        # (1-k) x^2 + (5-k) x + 6 = 0, larger root
        a, b, c = 1 - k, 5 - k, 6
        disc = mpmath.sqrt(b * b - 4 * a * c)
        roots = [(-b + disc) / (2 * a), (-b - disc) / (2 * a)]
        x = max(roots, key=lambda z: mpmath.re(z)) if not complex_mode else min(roots, key=lambda z: abs(z - (2 * g)))
        beta.append((g, 2 * g - x))
        a2.append((g, x * (x + 1) / r1))
    return SequenceSample(tuple(a2)), SequenceSample(tuple(beta))


def estimate_action_from_fg(fseq: SequenceSample, order: int = DEFAULT_ORDER, complex_mode: bool = False) -> GrowthFit:
    """Instanton action ``A``, exponent ``beta`` and one-loop amplitude from ``F_g``."""
    fseq = SequenceSample(tuple((g, big(v)) for g, v in fseq.points))
    if len(fseq) < order + 4:
        raise DataInsufficientError(f"need at least {order + 4} consecutive F_g")
    a2_raw, beta_raw = action_sequences(fseq, complex_mode)
    a2_acc, a2, a2_err = _estimate(a2_raw, order)
    beta_acc, beta, beta_err = _estimate(beta_raw, order)
    A = mpmath.sqrt(a2)
    vals = dict(fseq.points)
    amp = SequenceSample(tuple(
        (g, vals[g] * A ** (2 * g - beta) / mpmath.gamma(2 * g - beta)) for g in fseq.indices
    ))
    amp_acc, one_loop, amp_err = _estimate(amp, order)
    return GrowthFit(
        "action",
        value=A,
        uncertainty=a2_err / (2 * abs(A)),
        rate=A,
        beta=beta,
        one_loop=one_loop,
        order=order,
        extras={"beta_uncertainty": beta_err, "one_loop_uncertainty": amp_err},
        trace={"A2": a2_raw, "beta": beta_raw, "one_loop": amp},
    )
