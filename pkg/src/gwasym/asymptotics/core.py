"""Sequences, Richardson extrapolation and fit containers."""

from __future__ import annotations

from dataclasses import dataclass, field
from math import factorial
from typing import Any, Callable, Optional, Sequence

import mpmath

from ..arith import big

__all__ = [
    "SequenceSample",
    "GrowthFit",
    "DataInsufficientError",
    "richardson",
    "richardson_table",
    "last_estimate",
    "agreement_digits",
    "at_two_precisions",
]

DEFAULT_ORDER = 3


class DataInsufficientError(ValueError):
    """Not enough data points for the requested analysis."""


@dataclass(frozen=True)
class SequenceSample:
    """Ordered ``(index, value)`` pairs with strictly increasing integer indices."""

    points: tuple

    def __post_init__(self):
        pts = tuple((int(i), v) for i, v in self.points)
        for (a, _), (b, _) in zip(pts, pts[1:]):
            if b <= a:
                raise ValueError("indices must be strictly increasing")
        for i, v in pts:
            if isinstance(v, (mpmath.mpf, mpmath.mpc)) and not mpmath.isfinite(v):
                raise ValueError(f"non-finite value at index {i}")
        object.__setattr__(self, "points", pts)

    @classmethod
    def from_dict(cls, data: dict) -> "SequenceSample":
        return cls(tuple(sorted(data.items())))

    @classmethod
    def from_function(cls, fn: Callable[[int], Any], indices: Sequence[int]) -> "SequenceSample":
        return cls(tuple((i, fn(i)) for i in indices))

    @property
    def indices(self) -> list[int]:
        return [i for i, _ in self.points]

    @property
    def values(self) -> list:
        return [v for _, v in self.points]

    def __len__(self):
        return len(self.points)

    def last(self):
        return self.points[-1][1]

    def map(self, fn: Callable) -> "SequenceSample":
        return SequenceSample(tuple((i, fn(v)) for i, v in self.points))


def richardson(seq: SequenceSample, order: int = DEFAULT_ORDER) -> SequenceSample:
    """Order-``N`` Richardson transform.

    ``R[s](d) = sum_{k=0}^{N} s(d+k) (d+k)^N (-1)^(k+N) / (k! (N-k)!)``,
    exact on ``s(d) = c_0 + c_1/d + ... + c_N/d^N``. Defined at every ``d``
    with ``d, d+1, ..., d+N`` all present.
    """
    if order < 0:
        raise ValueError("order must be >= 0")
    vals = dict(seq.points)
    out = []
    for d in seq.indices:
        if all((d + k) in vals for k in range(order + 1)):
            acc = 0
            for k in range(order + 1):
                w = mpmath.mpf((d + k) ** order) / (factorial(k) * factorial(order - k))
                acc += (-1) ** (k + order) * w * vals[d + k]
            out.append((d, acc))
    if not out:
        raise DataInsufficientError(f"Richardson order {order} needs {order + 1} consecutive indices")
    return SequenceSample(tuple(out))


def richardson_table(seq: SequenceSample, max_order: int = DEFAULT_ORDER) -> list[SequenceSample]:
    """Transforms of orders ``0..max_order`` (order 0 is the input)."""
    return [seq] + [richardson(seq, n) for n in range(1, max_order + 1)]


def last_estimate(seq: SequenceSample, order: int = DEFAULT_ORDER):
    """Final Richardson value and the spread to the previous order as uncertainty."""
    hi = richardson(seq, order).last()
    lo = richardson(seq, order - 1).last() if order > 0 else seq.values[-2]
    return hi, abs(hi - lo)


def agreement_digits(a, b) -> int:
    """Number of leading decimal digits on which two numbers agree."""
    a, b = big(a), big(b)
    if a == b:
        return mpmath.mp.dps
    scale = max(abs(a), abs(b))
    if scale == 0:
        return mpmath.mp.dps
    rel = abs(a - b) / scale
    return max(0, int(mpmath.floor(-mpmath.log10(rel))))


def at_two_precisions(fn: Callable[[], Any], dps: int):
    """Evaluate ``fn`` at ``dps`` and ``2*dps`` digits; return both results."""
    with mpmath.workdps(dps):
        lo = fn()
    with mpmath.workdps(2 * dps):
        hi = fn()
    return lo, hi


@dataclass
class GrowthFit:
    """Fitted asymptotic model quantities with uncertainties.

    Unset fields stay ``None``. ``trace`` keeps the Richardson sequences used.
    """

    quantity: str
    value: Any = None
    uncertainty: Any = None
    rate: Any = None
    power: Any = None
    log_power: Any = None
    beta: Any = None
    one_loop: Any = None
    phase: Any = None
    order: int = DEFAULT_ORDER
    extras: dict = field(default_factory=dict)
    trace: dict = field(default_factory=dict)
