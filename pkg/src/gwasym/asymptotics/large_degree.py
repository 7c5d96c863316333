"""Large-degree expansions at fixed genus for local curves and Hurwitz theory.

Both expansions run in powers of ``d^(-1/2)``. Their coefficients are built
from the bundled ``chat_{j0}^{(j)}`` tables. The files are kept exactly as
tabulated; three entries fail numerical checks against exact invariants and
are replaced in code (see ``XP_CHAT_CORRECTIONS``, ``HURWITZ_CHAT_CORRECTIONS``).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import mpmath

from ..arith import QPolynomial, big, parse_polynomial
from ..geometries.hurwitz import hurwitz_alpha
from ..geometries.local_curve import XP_GENERA, _alpha_f, verified_data_text, xp_critical

__all__ = [
    "ChatEntry",
    "XP_CHAT_CORRECTIONS",
    "HURWITZ_CHAT_CORRECTIONS",
    "xp_chat_table",
    "hurwitz_chat_table",
    "chat_hurwitz_limit",
    "xp_action_scale",
    "xp_large_degree_coefficient",
    "xp_large_degree_terms",
    "xp_large_degree_prediction",
    "hurwitz_large_degree_coefficient",
    "hurwitz_large_degree_terms",
    "hurwitz_large_degree_prediction",
]

# Replacements fixed by extracting the coefficients from exact invariants on
# perfect-square degree grids (p = 3, 4, 5) and by the Hurwitz limit.
XP_CHAT_CORRECTIONS = {
    (2, 1): "(f^2+5*f-5)/18",
    (2, 2): "(f-2)^2/9",
}
HURWITZ_CHAT_CORRECTIONS = {
    (4, 2): Fraction(7, 9720),
}


@dataclass(frozen=True)
class ChatEntry:
    """``value = sqrt(2)^radical * poly(f)``; Hurwitz entries are constant polynomials."""

    radical: int
    poly: QPolynomial

    def __call__(self, f=None):
        v = big(self.poly(Fraction(f))) if f is not None else big(self.poly.coeffs[0] if self.poly.coeffs else 0)
        return v * mpmath.sqrt(2) ** self.radical

    def leading(self, degree: int) -> "ChatEntry":
        c = self.poly.coeffs[degree] if len(self.poly.coeffs) > degree else Fraction(0)
        return ChatEntry(self.radical, QPolynomial((c,), "f"))


def _radical(token: str) -> int:
    if token == "sqrt2":
        return 1
    if token == "1":
        return 0
    raise ValueError(f"unknown radical {token!r}")


def _rows(name: str):
    for line in verified_data_text(name).splitlines():
        if not line.strip() or line.startswith("#"):
            continue
        j, j0, rad, expr = line.split("\t")
        yield int(j), int(j0), _radical(rad), expr


@lru_cache(maxsize=None)
def xp_chat_table(corrected: bool = True) -> dict:
    """``{(j, j0): ChatEntry}`` for local curves, ``j <= 4``."""
    out = {}
    for j, j0, rad, expr in _rows("xp_chat.tsv"):
        if corrected and (j, j0) in XP_CHAT_CORRECTIONS:
            expr = XP_CHAT_CORRECTIONS[(j, j0)]
        out[(j, j0)] = ChatEntry(rad, parse_polynomial(expr, "f"))
    return out


@lru_cache(maxsize=None)
def hurwitz_chat_table(corrected: bool = True) -> dict:
    """``{(j, j0): ChatEntry}`` for Hurwitz theory, ``j <= 7``."""
    out = {}
    for j, j0, rad, expr in _rows("hurwitz_chat.tsv"):
        val = Fraction(expr)
        if corrected and (j, j0) in HURWITZ_CHAT_CORRECTIONS:
            val = HURWITZ_CHAT_CORRECTIONS[(j, j0)]
        out[(j, j0)] = ChatEntry(rad, QPolynomial((val,), "f"))
    return out


def chat_hurwitz_limit(j: int, j0: int, corrected: bool = True) -> ChatEntry:
    """``lim_{f->oo} chat^{(j)}_{j0}(f) / (f(f-1))^(j/2)``: the ``f^j`` coefficient."""
    return xp_chat_table(corrected)[(j, j0)].leading(j)


def _jmax_check(jmax: int, table: dict):
    top = max(j for j, _ in table)
    if not 0 <= jmax <= top:
        raise ValueError(f"jmax must lie in 0..{top} (bundled coefficient range)")


def xp_action_scale(p: int):
    """``sqrt(2) w_c^(1-f/2) / (p-1)`` with ``f = (p-1)^2``."""
    wc, _ = xp_critical(p)
    f = (p - 1) ** 2
    return mpmath.sqrt(2) * big(wc) ** (1 - mpmath.mpf(f) / 2) / (p - 1)


def xp_large_degree_coefficient(g: int, k: int, j: int, p: int, corrected: bool = True):
    """``c_{g,k}^{(j)}`` of the Jacobi-polynomial large-degree expansion."""
    table = xp_chat_table(corrected)
    _jmax_check(j, table)
    f = (p - 1) ** 2
    _, tc = xp_critical(p)
    n = 5 * (g - 1) - k
    base = mpmath.exp(n * tc / 2) * xp_action_scale(p) ** (-n) * mpmath.rgamma(mpmath.mpf(n - j) / 2)
    if j == 0:
        return base
    s = mpmath.fsum(table[(j, j0)](f) * mpmath.mpf(n) ** j0 for j0 in range(1, j + 1))
    return base * s / (f * (f - 1)) ** (mpmath.mpf(j) / 2)


def xp_large_degree_terms(g: int, d: int, p: int, jmax: int, corrected: bool = True) -> list:
    """Per-``j`` contributions to the large-degree expansion of ``N_{g,d}``."""
    if g not in XP_GENERA:
        raise ValueError(f"genus must be one of {XP_GENERA}")
    _jmax_check(jmax, xp_chat_table(corrected))
    gh = 5 * (g - 1)
    f = (p - 1) ** 2
    _, tc = xp_critical(p)
    pref = mpmath.exp(d * tc) * mpmath.mpf(d) ** (mpmath.mpf(gh) / 2 - 1)
    out = []
    for j in range(jmax + 1):
        s = mpmath.fsum(
            xp_large_degree_coefficient(g, k, j - k, p, corrected) * big(_alpha_f(g, k, f))
            for k in range(min(j, gh) + 1)
        )
        out.append(pref * s * mpmath.mpf(d) ** (-mpmath.mpf(j) / 2))
    return out


def xp_large_degree_prediction(g: int, d: int, p: int, jmax: int, corrected: bool = True):
    """Truncated large-degree prediction for ``N_{g,d}`` in the :func:`xp_gw_poly` normalization."""
    return mpmath.fsum(xp_large_degree_terms(g, d, p, jmax, corrected))


def hurwitz_large_degree_coefficient(g: int, k: int, j: int, corrected: bool = True):
    """``c~_{g,k}^{(j)}`` of the Hurwitz large-degree expansion."""
    table = hurwitz_chat_table(corrected)
    _jmax_check(j, table)
    n = 5 * (g - 1) - k
    base = mpmath.mpf(2) ** (-mpmath.mpf(n) / 2) * mpmath.rgamma(mpmath.mpf(n - j) / 2)
    if j == 0:
        return base
    return base * mpmath.fsum(table[(j, j0)]() * mpmath.mpf(n) ** j0 for j0 in range(1, j + 1))


def hurwitz_large_degree_terms(g: int, d: int, jmax: int, corrected: bool = True) -> list:
    if g not in XP_GENERA:
        raise ValueError(f"genus must be one of {XP_GENERA}")
    _jmax_check(jmax, hurwitz_chat_table(corrected))
    gh = 5 * (g - 1)
    pref = mpmath.exp(d) * mpmath.mpf(d) ** (mpmath.mpf(gh) / 2 - 1)
    out = []
    for j in range(jmax + 1):
        s = mpmath.fsum(
            hurwitz_large_degree_coefficient(g, k, j - k, corrected) * big(hurwitz_alpha(g, k))
            for k in range(min(j, 3 * (g - 1)) + 1)
        )
        out.append(pref * s * mpmath.mpf(d) ** (-mpmath.mpf(j) / 2))
    return out


def hurwitz_large_degree_prediction(g: int, d: int, jmax: int, corrected: bool = True):
    """Truncated large-degree prediction for ``N^H_{g,d}``."""
    return mpmath.fsum(hurwitz_large_degree_terms(g, d, jmax, corrected))
