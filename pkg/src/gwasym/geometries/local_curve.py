"""Local curves X_p: exact GW invariants from the bundled B-model coefficients."""

from __future__ import annotations

import hashlib
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from importlib import resources
from math import comb, factorial

import mpmath

from ..arith import QPolynomial, falling_binomial, parse_polynomial

__all__ = [
    "XP_GENERA",
    "XpCoefficients",
    "xp_coefficients",
    "xp_alpha",
    "xp_gw",
    "xp_gw_poly",
    "xp_genus01",
    "xp_critical",
    "jacobi_p",
    "data_checksums",
    "verified_data_text",
    "reflection_constant",
]

XP_GENERA = (2, 3, 4)

# sha256 of the bundled coefficient files; guards against silent edits
_CHECKSUM_FILE = "checksums.sha256"


def _data_text(name: str) -> str:
    return resources.files("gwasym").joinpath("data", name).read_text()


@lru_cache(maxsize=None)
def _recorded_digests() -> dict:
    out = {}
    for line in _data_text(_CHECKSUM_FILE).splitlines():
        if line.strip() and not line.startswith("#"):
            digest, name = line.split()
            out[name] = digest
    return out


def verified_data_text(name: str) -> str:
    """Bundled file contents, refusing files whose checksum does not match."""
    text = _data_text(name)
    want = _recorded_digests().get(name)
    if want is None:
        raise ValueError(f"no recorded checksum for bundled file {name}")
    got = hashlib.sha256(text.encode()).hexdigest()
    if got != want:
        raise ValueError(f"bundled file {name} fails its checksum ({got} != {want})")
    return text


def data_checksums() -> dict[str, tuple[str, str]]:
    """Recorded and actual sha256 digests of bundled data files."""
    return {
        name: (digest, hashlib.sha256(_data_text(name).encode()).hexdigest())
        for name, digest in _recorded_digests().items()
    }


@dataclass(frozen=True)
class XpCoefficients:
    """``a_{g,i}(f) = num_i(f) / den_i(f)`` for one genus, ``i = 1..5(g-1)``."""

    genus: int
    numerators: tuple
    denominators: tuple

    def a(self, i: int, f) -> Fraction:
        if not 1 <= i <= len(self.numerators):
            return Fraction(0)
        return Fraction(self.numerators[i - 1](f)) / self.denominators[i - 1](f)


@lru_cache(maxsize=None)
def xp_coefficients(g: int) -> XpCoefficients:
    if g not in XP_GENERA:
        raise ValueError(f"bundled local-curve coefficients cover g in {XP_GENERA}, got g={g}")
    nums, dens = [], []
    for line in verified_data_text(f"xp_coeffs_g{g}.tsv").splitlines():
        if not line.strip() or line.startswith("#"):
            continue
        i, num, den = line.split("\t")
        if int(i) != len(nums) + 1:
            raise ValueError(f"xp_coeffs_g{g}.tsv: rows out of order at i={i}")
        nums.append(parse_polynomial(num, "f"))
        dens.append(parse_polynomial(den, "f"))
    if len(nums) != 5 * (g - 1):
        raise ValueError(f"xp_coeffs_g{g}.tsv: expected {5 * (g - 1)} rows, got {len(nums)}")
    return XpCoefficients(g, tuple(nums), tuple(dens))


def _f(p: int) -> int:
    if p < 3:
        raise ValueError(f"local curve needs p >= 3, got {p}")
    return (p - 1) ** 2


def xp_critical(p: int):
    """Critical point ``(w_c, t_c)``; ``w_c`` exact, ``t_c`` at working precision."""
    f = _f(p)
    wc = Fraction(p * (p - 2), f)
    tc = p * (2 - p) * mpmath.log(p * (p - 2)) + 2 * f * mpmath.log(p - 1)
    return wc, tc


@lru_cache(maxsize=None)
def _alpha_f(g: int, k: int, f) -> Fraction:
    co = xp_coefficients(g)
    wc1 = Fraction(-1, f)  # w_c - 1
    s = Fraction(0)
    for n in range(max(k, 1), 5 * (g - 1) + 1):
        s += comb(n, k) * co.a(n, f) * wc1 ** (n - k)
    return s


def xp_alpha(g: int, k: int, p) -> Fraction:
    """``alpha_{g,k} = sum_n C(n,k) a_{g,n} (w_c - 1)^{n-k}`` at ``f = (p-1)^2``."""
    if not 0 <= k <= 5 * (g - 1):
        raise ValueError(f"k must lie in 0..{5 * (g - 1)}")
    return _alpha_f(g, k, Fraction(p - 1) ** 2)


def jacobi_p(n: int, a, b, z):
    """Jacobi polynomial by the finite binomial sum, valid for any parameters."""
    s = 0
    for j in range(n + 1):
        s += falling_binomial(n + a, n - j) * falling_binomial(n + b, j) * ((z - 1) / 2) ** j * ((z + 1) / 2) ** (n - j)
    return s


def _jacobi_sum(g: int, d: int, f) -> Fraction:
    gh = 5 * (g - 1)
    z = Fraction(f - 2) / f
    s = Fraction(0)
    for k in range(gh + 1):
        if k == gh:
            continue  # factor (gh - k) vanishes
        u = k - d - gh
        v = d * (f - 1) + gh - k
        s += _alpha_f(g, k, f) * (gh - k) * Fraction(f) ** (d + gh - k) * jacobi_p(d - 1, u, v, z)
    sign = 1 if (d - 1) % 2 == 0 else -1
    return sign * s / d


def xp_gw_poly(g: int, d: int, p) -> Fraction:
    """Invariants as the polynomial family in ``p`` (any rational ``p``).

    This is the normalization whose top ``p``-coefficient is the positive
    Hurwitz invariant: the Jacobi sum for ``g >= 2`` and the closed forms with
    the genus-0 sign reversed.
    """
    if d < 1:
        raise ValueError("degree must be >= 1")
    if g == 0:
        return -xp_genus01(0, d, p)
    if g == 1:
        return xp_genus01(1, d, p)
    if g not in XP_GENERA:
        raise ValueError(f"bundled local-curve coefficients cover g in {XP_GENERA}, got g={g}")
    return _jacobi_sum(g, d, Fraction(p - 1) ** 2)


def xp_gw(g: int, d: int, p: int) -> Fraction:
    """Exact ``N_{g,d}`` for ``X_p`` in the sign convention with integral GV invariants.

    Equals ``(-1)^(g-1) (-1)^(dp)`` times :func:`xp_gw_poly`; at ``d = 1`` this
    gives ``n_0^(1) = (-1)^(p-1)``.
    """
    if int(p) != p:
        raise ValueError("xp_gw needs an integer p; use xp_gw_poly for rational p")
    s = (-1) ** (g - 1 + d * int(p))
    return s * xp_gw_poly(g, d, p)


def _rising(x, n: int):
    out = Fraction(1)
    for k in range(n):
        out *= x + k
    return out


def xp_genus01(g: int, d: int, p) -> Fraction:
    """Closed-form genus-0 and genus-1 invariants, signs as in the standard closed forms.

    ``p`` may be any rational; the formulas are polynomial in ``p`` for fixed
    ``d``.
    """
    f = Fraction(p - 1) ** 2
    # (df - 1)! / (d(f-1))!  as a product, so that f need not be an integer
    ratio = _rising(d * (f - 1) + 1, d - 1)
    if g == 0:
        val = -ratio / (factorial(d) * d * d)
    elif g == 1:
        s = Fraction(0)
        for n in range(d):
            s += f ** (d - n) / factorial(n) * _rising(d * (f - 1), n)
        val = s / (24 * d) - ratio / factorial(d) * (f + 2) / 24
    else:
        raise ValueError("closed forms exist only for g = 0, 1")
    return val


def reflection_constant(g: int, samples: int = 64) -> Fraction:
    """Fit ``C_g`` in the reflection identity of the ``a_{g,i}(f)`` and verify it for every ``i``.

    With ``abar_i(f) = C f^(6(g-1)) a_i(f) + C(5(g-1), i) (f^i - f^(i+g-1))``
    the identity is ``abar_i(f) = f^(6(g-1)) abar_{5(g-1)-i}(1/f)``. It is
    linear in ``C``; ``C`` is solved at one point and checked at ``samples``
    rational points for all ``i`` (more points than any numerator degree).
    """
    co = xp_coefficients(g)
    n, e = 5 * (g - 1), 6 * (g - 1)

    def parts(i, f):
        # abar_i(f) = C * x + y
        return Fraction(f) ** e * co.a(i, f), comb(n, i) * (Fraction(f) ** i - Fraction(f) ** (i + g - 1))

    def residual_coeffs(i, f):
        x1, y1 = parts(i, f)
        x2, y2 = parts(n - i, 1 / Fraction(f))
        s = Fraction(f) ** e
        return x1 - s * x2, s * y2 - y1  # C * a = b

    C = None
    for i in range(n + 1):
        a, b = residual_coeffs(i, Fraction(7, 3))
        if a != 0:
            C = b / a
            break
    if C is None:
        raise ValueError(f"reflection identity does not determine C_{g}")
    for i in range(n + 1):
        for k in range(samples):
            f = Fraction(k + 2, 2 * k + 3)
            a, b = residual_coeffs(i, f)
            if C * a != b:
                raise ValueError(f"reflection identity fails at g={g}, i={i}, f={f}")
    return C
