"""Exact transforms among GW, GV, abc and Dirichlet-series representations."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial
from typing import Callable, Mapping, Optional

from .arith import (
    DirichletVector,
    TruncatedSeries,
    bernoulli,
    divisors,
    f_cs,
)

__all__ = [
    "IncompleteDataError",
    "DataInconsistencyError",
    "GvTable",
    "GwTable",
    "AbcTable",
    "genus_bound",
    "sine_coeff",
    "sine_coeff_series",
    "arcsin_alpha",
    "gv_to_gw",
    "gw_to_gv",
    "gv_to_abc",
    "abc_to_gw",
    "dirichlet_relations_check",
]


class IncompleteDataError(ValueError):
    """A required table entry (genus, degree) is not available."""

    def __init__(self, msg: str, genus: Optional[int] = None, degree: Optional[int] = None):
        super().__init__(msg)
        self.genus = genus
        self.degree = degree


class DataInconsistencyError(ValueError):
    """Input data contradicts integrality or an exact identity."""


# ---------------------------------------------------------------------------
# Genus bounds


def _g_local_p2(d: int) -> int:
    return (d - 1) * (d - 2) // 2


def _g_abjm(d: int) -> int:
    return d * (d - 4) // 4 + 1


def _g_xp(p: int) -> Callable[[int], int]:
    return lambda d: (d - 1) * ((p - 2) * d - 2) // 2


def _g_conifold(d: int) -> int:
    return 0


def genus_bound(geometry: str) -> Optional[Callable[[int], int]]:
    """Per-geometry ``G(d)``; ``None`` when it has to be inferred from data."""
    g = geometry.lower()
    if g in ("local_p2", "localp2", "p2"):
        return _g_local_p2
    if g == "abjm":
        return _g_abjm
    if g == "conifold":
        return _g_conifold
    if g.startswith("xp"):
        p = int(g[2:].lstrip("_=") or 3)
        return _g_xp(p)
    return None


def genus_bound_label(geometry: str) -> str:
    g = geometry.lower()
    if g in ("local_p2", "localp2", "p2"):
        return "(d-1)(d-2)/2"
    if g == "abjm":
        return "floor(d(d-4)/4)+1"
    if g == "conifold":
        return "0"
    if g.startswith("xp"):
        p = int(g[2:].lstrip("_=") or 3)
        return f"(d-1)((p-2)d-2)/2 [p={p}]"
    return "inferred"


# ---------------------------------------------------------------------------
# Tables


@dataclass(frozen=True)
class GvTable:
    """Integer GV invariants ``n_r^(d)``.

    ``degrees`` lists the degrees for which the table is complete: any
    ``(r, d)`` with ``d`` in ``degrees`` and no entry is zero. ``bound`` is
    ``G(d)``; when absent it is inferred per degree from the data.
    """

    geometry: str
    entries: Mapping[tuple[int, int], int]
    degrees: frozenset
    bound: Optional[Callable[[int], int]] = None

    def __post_init__(self):
        clean = {}
        for (r, d), v in self.entries.items():
            if d < 1:
                raise ValueError(f"degree must be >= 1, got {d}")
            if r < 0:
                raise ValueError(f"genus index must be >= 0, got {r}")
            if Fraction(v).denominator != 1:
                raise DataInconsistencyError(f"GV invariant n_{r}^({d}) = {v} is not an integer")
            if v:
                clean[(r, d)] = int(v)
        degs = frozenset(self.degrees) | {d for (_, d) in clean}
        object.__setattr__(self, "entries", clean)
        object.__setattr__(self, "degrees", degs)
        if self.bound is not None:
            for (r, d) in clean:
                if r > self.bound(d):
                    raise DataInconsistencyError(
                        f"n_{r}^({d}) is nonzero beyond the genus bound G({d}) = {self.bound(d)}"
                    )

    @property
    def inferred(self) -> bool:
        return self.bound is None

    @property
    def dmax(self) -> int:
        return max(self.degrees, default=0)

    def G(self, d: int) -> int:
        if self.bound is not None:
            return max(self.bound(d), 0)
        return max((r for (r, dd) in self.entries if dd == d), default=0)

    def n(self, r: int, d: int) -> int:
        if d not in self.degrees:
            raise IncompleteDataError(f"no GV data for (r={r}, beta={d})", r, d)
        return self.entries.get((r, d), 0)


@dataclass(frozen=True)
class GwTable:
    """Exact GW invariants ``N_{g,d}`` keyed by ``(g, d)``."""

    geometry: str
    entries: Mapping[tuple[int, int], Fraction]
    bound: Optional[Callable[[int], int]] = None

    def __post_init__(self):
        clean = {}
        for (g, d), v in self.entries.items():
            if d < 1:
                raise ValueError(f"degree must be >= 1, got {d}")
            clean[(g, d)] = Fraction(v)
        object.__setattr__(self, "entries", clean)

    @property
    def degrees(self) -> list[int]:
        return sorted({d for (_, d) in self.entries})

    @property
    def genera(self) -> list[int]:
        return sorted({g for (g, _) in self.entries})

    def has(self, g: int, d: int) -> bool:
        return (g, d) in self.entries

    def N(self, g: int, d: int) -> Fraction:
        try:
            return self.entries[(g, d)]
        except KeyError:
            raise IncompleteDataError(f"no GW data for (g={g}, d={d})", g, d) from None

    def column(self, g: int) -> dict[int, Fraction]:
        return {d: v for (gg, d), v in sorted(self.entries.items()) if gg == g}

    def row(self, d: int) -> dict[int, Fraction]:
        return {g: v for (g, dd), v in sorted(self.entries.items()) if dd == d}


@dataclass(frozen=True)
class AbcTable:
    """Integer data ``a_d``, ``b_{d,m}``, ``c_d`` determining all GW invariants."""

    geometry: str
    a: Mapping[int, int]
    b: Mapping[tuple[int, int], int]
    c: Mapping[int, int]
    dmax: int = 0

    def is_integral(self) -> bool:
        vals = list(self.a.values()) + list(self.b.values()) + list(self.c.values())
        return all(Fraction(v).denominator == 1 for v in vals)


# ---------------------------------------------------------------------------
# Transform coefficients


@lru_cache(maxsize=None)
def sine_coeff(h: int, g: int) -> Fraction:
    """``c_{h,g}``: coefficient of ``x^{2g-2}`` in ``(2 sin(x/2))^{2h-2}``."""
    if h < 0 or g < 0:
        raise ValueError("indices must be non-negative")
    if h > g:
        return Fraction(0)
    if h == 0:
        return f_cs(g)
    if h == 1:
        return Fraction(int(g == 1))
    # finite-difference closed form, valid for g >= 2
    s = 0
    for k in range(1, h):
        s += comb(2 * h - 2, h - 1 + k) * (-1) ** k * k ** (2 * g - 2)
    sign = 1 if g % 2 == 1 else -1
    return Fraction(sign * 2 * s, factorial(2 * g - 2))


def _sinc_series(order: int) -> TruncatedSeries:
    # 2 sin(x/2)/x as a series in s = x^2
    return TruncatedSeries.from_function(
        lambda n: Fraction((-1) ** n, 4**n * factorial(2 * n + 1)), order
    )


def sine_coeff_series(h: int, g: int) -> Fraction:
    """Taylor-series oracle for :func:`sine_coeff`."""
    if h > g:
        return Fraction(0)
    k = g - h
    return (_sinc_series(k) ** (2 * h - 2))[k]


@lru_cache(maxsize=None)
def arcsin_alpha(g: int, h: int) -> Fraction:
    """``alpha_{g,h}``: coefficient of ``r^{g-h}`` in ``(arcsin(sqrt r/2)/(sqrt r/2))^{2h-2}``."""
    if h > g:
        return Fraction(0)
    k = g - h
    base = TruncatedSeries.from_function(
        lambda n: Fraction(comb(2 * n, n), 16**n * (2 * n + 1)), k
    )
    return (base ** (2 * h - 2))[k]


# ---------------------------------------------------------------------------
# GV <-> GW


def _multicover(gv: GvTable, g: int, d: int, skip_self: bool) -> Fraction:
    total = Fraction(0)
    for beta in divisors(d):
        if skip_self and beta == d:
            continue
        if beta not in gv.degrees:
            raise IncompleteDataError(f"no GV data for (r=0, beta={beta})", 0, beta)
        k = d // beta
        w = Fraction(k) ** (2 * g - 3)
        for r in range(0, min(g, gv.G(beta)) + 1):
            n = gv.entries.get((r, beta), 0)
            if n:
                total += sine_coeff(r, g) * n * w
    return total


def gv_to_gw(gv: GvTable, gmax: int, dmax: int) -> GwTable:
    """GW invariants ``N_{g,d}`` for ``0 <= g <= gmax``, ``1 <= d <= dmax``."""
    out = {}
    for d in range(1, dmax + 1):
        for g in range(gmax + 1):
            out[(g, d)] = _multicover(gv, g, d, skip_self=False)
    return GwTable(gv.geometry, out, gv.bound)


def _inferred_top_genus(gw: GwTable, d: int) -> int:
    g = 0
    while gw.has(g + 1, d):
        g += 1
    return g


def gw_to_gv(gw: GwTable, bound: Optional[Callable[[int], int]] = None) -> GvTable:
    """Invert the multi-cover formula degree by degree.

    Genera beyond ``G(d)`` present in ``gw`` are checked against the
    reconstructed GV data.
    """
    bound = bound if bound is not None else gw.bound
    entries: dict[tuple[int, int], int] = {}
    degrees: set[int] = set()
    partial = GvTable(gw.geometry, {}, frozenset())
    for d in gw.degrees:
        if not gw.has(0, d):
            raise IncompleteDataError(f"no GW data for (g=0, d={d})", 0, d)
        top = bound(d) if bound is not None else _inferred_top_genus(gw, d)
        top = max(top, 0)
        for beta in divisors(d)[:-1]:
            if beta not in degrees:
                raise IncompleteDataError(f"no GV data for (r=0, beta={beta})", 0, beta)
        new: dict[int, Fraction] = {}
        for g in range(top + 1):
            resid = gw.N(g, d) - _multicover(partial, g, d, skip_self=True)
            for r in range(g):
                resid -= sine_coeff(r, g) * new[r]
            if resid.denominator != 1:
                raise DataInconsistencyError(
                    f"non-integer GV invariant n_{g}^({d}) = {resid}; input table is inconsistent"
                )
            new[g] = resid
        degrees.add(d)
        for r, v in new.items():
            if v:
                entries[(r, d)] = int(v)
        partial = GvTable(gw.geometry, entries, frozenset(degrees))
        for g in range(top + 1, max(gw.genera) + 1):
            if gw.has(g, d):
                expect = _multicover(partial, g, d, skip_self=False)
                if expect != gw.N(g, d):
                    raise DataInconsistencyError(
                        f"N_{{{g},{d}}} = {gw.N(g, d)} disagrees with GV reconstruction {expect}"
                    )
    return GvTable(gw.geometry, entries, frozenset(degrees), bound)


# ---------------------------------------------------------------------------
# abc representation


def b_range(gv: GvTable, d: int) -> int:
    """Largest ``m`` for which ``b_{d,m}`` can be nonzero."""
    return max((k * (gv.G(d // k) - 1) for k in divisors(d)), default=0)


def gv_to_abc(gv: GvTable, dmax: Optional[int] = None) -> AbcTable:
    """Integer ``a_d``, ``b_{d,m}``, ``c_d`` from GV data."""
    dmax = gv.dmax if dmax is None else dmax
    a, b, c = {}, {}, {}
    for d in range(1, dmax + 1):
        for m in divisors(d):
            if m not in gv.degrees:
                raise IncompleteDataError(f"no GV data for (r=0, beta={m})", 0, m)
        a[d] = gv.n(0, d)
        for m in range(1, b_range(gv, d) + 1):
            s = 0
            for k in divisors(d):
                if m % k:
                    continue
                mk, dk = m // k, d // k
                inner = 0
                for h in range(mk + 1, gv.G(dk) + 1):
                    inner += gv.entries.get((h, dk), 0) * comb(2 * h - 2, h - 1 + mk)
                s += (-1) ** mk * (2 * dk) * inner
            if s:
                b[(d, m)] = s
        cd = Fraction(0)
        for m in divisors(d):
            part = Fraction(gv.entries.get((1, m), 0))
            for h in range(2, gv.G(m) + 1):
                # 2 C(2h-3, h-2) = C(2h-2, h-1); no 1/h factor, see abc_to_gw at g = 1
                part += 2 * gv.entries.get((h, m), 0) * comb(2 * h - 3, h - 2)
            cd += m * part
        c[d] = int(cd) if cd.denominator == 1 else cd
    return AbcTable(gv.geometry, a, b, c, dmax)


def abc_to_gw(abc: AbcTable, g: int, d: int) -> Fraction:
    """``N_{g,d}`` from the abc data; valid for every genus ``g >= 0``."""
    apart = Fraction(0)
    for m in divisors(d):
        apart += abc.a.get(m, 0) * Fraction(d // m) ** (2 * g - 3)
    if g == 0:
        return apart
    bpart = Fraction(abc.c.get(d, 0) if g == 1 else 0)
    for (dd, m), v in abc.b.items():
        if dd == d:
            bpart += v * m ** (2 * g - 2)
    return f_cs(g) * (apart + Fraction(2 * g) / bernoulli(2 * g) * bpart / d)


# ---------------------------------------------------------------------------
# Dirichlet relations


@dataclass
class DirichletReport:
    ok: bool
    checked: int = 0
    failure: Optional[dict] = None
    relations: list = field(default_factory=list)


def _first_mismatch(lhs: DirichletVector, rhs: DirichletVector) -> Optional[int]:
    for d in range(1, lhs.size + 1):
        if lhs[d] != rhs[d]:
            return d
    return None


def dirichlet_relations_check(gv: GvTable, gw: GwTable, gmax: int, D: int) -> DirichletReport:
    """Check the Dirichlet-series identities linking GW, GV and abc data.

    Relations checked for every ``g <= gmax`` on degrees ``1..D``:
    ``W_g = sum_h c_{h,g} GV_h``, ``GV_g = sum_h alpha_{g,h} W_h``,
    ``W_g = f_cs(g) A + B_{2g-2}`` and ``GV_g = sum_{h>=1} alpha_{g,h} B_{2h-2}``.
    """
    abc = gv_to_abc(gv, D)
    zero = DirichletVector((0,) * D)
    GV = [DirichletVector.from_function(lambda d, r=r: gv.n(r, d), D) for r in range(gmax + 1)]
    W = []
    for g in range(gmax + 1):
        GWg = DirichletVector.from_function(lambda d, g=g: gw.N(g, d), D)
        W.append(GWg / DirichletVector.zeta_shift(2 * g - 3, D))
    A = DirichletVector.from_function(lambda d: abc.a.get(d, 0), D)
    B = [None]
    for g in range(1, gmax + 1):
        def mb(d, g=g):
            s = Fraction(abc.c.get(d, 0) if g == 1 else 0)
            for (dd, m), v in abc.b.items():
                if dd == d:
                    s += v * m ** (2 * g - 2)
            return s / d
        sign = 1 if g % 2 == 1 else -1
        vec = DirichletVector.from_function(mb, D) / DirichletVector.zeta_shift(2 * g - 3, D)
        B.append(vec.scale(Fraction(sign, factorial(2 * g - 2))))

    report = DirichletReport(ok=True)
    checks = []
    for g in range(gmax + 1):
        rhs = zero
        for h in range(g + 1):
            rhs = rhs + GV[h].scale(sine_coeff(h, g))
        checks.append(("W=cGV", g, W[g], rhs))
        inv = zero
        for h in range(g + 1):
            inv = inv + W[h].scale(arcsin_alpha(g, h))
        checks.append(("GV=alphaW", g, GV[g], inv))
        if g >= 1:
            checks.append(("W=fA+B", g, W[g], A.scale(f_cs(g)) + B[g]))
            acc = zero
            for h in range(1, g + 1):
                acc = acc + B[h].scale(arcsin_alpha(g, h))
            checks.append(("GV=alphaB", g, GV[g], acc))
            acc = zero
            for h in range(1, g + 1):
                acc = acc + GV[h].scale(sine_coeff(h, g))
            checks.append(("B=cGV", g, B[g], acc))
        else:
            checks.append(("GV0=A", 0, GV[0], A))
    for name, g, lhs, rhs in checks:
        report.checked += 1
        d = _first_mismatch(lhs, rhs)
        report.relations.append(name)
        if d is not None and report.ok:
            report.ok = False
            report.failure = {"relation": name, "g": g, "d": d, "lhs": str(lhs[d]), "rhs": str(rhs[d])}
    return report
