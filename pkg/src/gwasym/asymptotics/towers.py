"""Free energies from tables and the Gaussian-like large-genus tower."""

from __future__ import annotations

from dataclasses import dataclass

import mpmath

from ..arith import big
from ..invariants import GwTable, IncompleteDataError

__all__ = ["TruncatedFreeEnergy", "free_energy_truncated", "xp_tower_term", "xp_tower_prediction"]


@dataclass(frozen=True)
class TruncatedFreeEnergy:
    """``F*_g(t)``, the degrees used and whether the dominant degree is interior."""

    value: object
    dmax: int
    argmax: int
    peak_interior: bool


def free_energy_truncated(gw: GwTable, g: int, t) -> TruncatedFreeEnergy:
    """``sum_{d <= dmax(g)} N_{g,d} e^{-d t}`` over the degrees present at genus ``g``."""
    col = gw.column(g)
    if not col:
        raise IncompleteDataError(f"no invariants at genus {g}", g, None)
    t = big(t)
    terms = {d: big(v) * mpmath.exp(-d * t) for d, v in sorted(col.items())}
    ds = sorted(terms)
    top = max(ds, key=lambda d: (abs(terms[d]), -d))
    return TruncatedFreeEnergy(
        value=mpmath.fsum(terms.values()),
        dmax=ds[-1],
        argmax=top,
        peak_interior=ds[0] < top < ds[-1] or (top == ds[0] == 1 and len(ds) > 1),
    )


def xp_tower_term(g: int, t, m: int):
    """``Gamma(2g-1)/(pi A_m^(2g-1)) (t_m + A_m/(2 pi (2g-2)))`` with ``t_m = t + 2 pi i m``, ``A_m = 2 pi t_m``."""
    tm = big(t) + 2j * mpmath.pi * m
    A = 2 * mpmath.pi * tm
    return mpmath.gamma(2 * g - 1) / (mpmath.pi * A ** (2 * g - 1)) * (tm + A / (2 * mpmath.pi * (2 * g - 2)))


def xp_tower_prediction(g: int, t, mmax: int, include_gaussian: bool = True):
    """Large-genus free energy of local curves summed over ``|m| <= mmax``.

    Without the Gaussian (``m = 0``) piece this is the prediction for the
    normalized free energy. Real ``t`` gives a real result, as the ``m``
    and ``-m`` terms are complex conjugates.
    """
    if g < 2:
        raise ValueError("tower prediction needs g >= 2")
    if mmax < 0:
        raise ValueError("mmax must be >= 0")
    total = xp_tower_term(g, t, 0) if include_gaussian else 0
    for m in range(1, mmax + 1):
        total += xp_tower_term(g, t, m) + xp_tower_term(g, t, -m)
    if mpmath.im(big(t)) == 0:
        return mpmath.re(total)
    return total
