"""Command-line interface: generate tables, convert representations, run analyses.

Exit codes: 0 success, 2 usage error, 3 insufficient data, 4 internal
inconsistency (integrality or checksum failure).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from importlib import resources
from typing import Any, Callable, Optional, Sequence

import mpmath

from . import __version__
from .arith import big, mp_str, rational_str
from .asymptotics import (
    DataInsufficientError,
    agreement_digits,
    diagonal_action_extract,
    diagonal_sequence,
    diagonal_terms,
    estimate_action_from_fg,
    fit_exponential_rate,
    fit_log_exponent,
    fit_power_exponent,
    gen_diag_polys,
    hurwitz_large_degree_terms,
    saddle_linear_fit,
    saddle_scan,
    xp_large_degree_terms,
    xp_tower_prediction,
)
from .asymptotics.core import SequenceSample
from .asymptotics.towers import free_energy_truncated
from .geometries import geometry_spec
from .geometries.conifold import conifold_free_energy, conifold_gw, conifold_tower_prediction
from .geometries.hurwitz import hurwitz_table, toda_residual
from .geometries.local_curve import xp_critical, xp_gw, xp_gw_poly
from .geometries.tables import TableParseError, atomic_write, dump_table, load_table
from .invariants import (
    DataInconsistencyError,
    GvTable,
    GwTable,
    IncompleteDataError,
    genus_bound,
    gv_to_abc,
    gv_to_gw,
    gw_to_gv,
)

__all__ = ["RunConfig", "main", "build_parser", "PRECISION_ENV", "EXIT_OK", "EXIT_USAGE", "EXIT_DATA", "EXIT_INCONSISTENT"]

PRECISION_ENV = "GWASYM_DPS"
DEFAULT_DPS = 200
MIN_DPS = 50

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_DATA = 3
EXIT_INCONSISTENT = 4

GENERATED = ("conifold", "xp", "hurwitz")
SAMPLES = {"local_p2": "local_p2_gv.tsv", "abjm": "abjm_gv.tsv", "quintic": "quintic_gv.tsv"}
ANALYSES = ("fit-rate", "fit-power", "fit-log", "action", "diagonal", "saddle", "tower", "poly", "large-degree", "toda")


class UsageError(ValueError):
    pass


@dataclass
class RunConfig:
    """Validated command configuration, echoed into every JSON report."""

    command: str
    analysis: Optional[str] = None
    geometry: Optional[str] = None
    input: Optional[str] = None
    output: Optional[str] = None
    csv: Optional[str] = None
    format: str = "tsv"
    to: Optional[str] = None
    p: Optional[int] = None
    t: Optional[str] = None
    q: Optional[int] = None
    g: Optional[int] = None
    d: Optional[int] = None
    gmin: Optional[int] = None
    gmax: Optional[int] = None
    dmin: Optional[int] = None
    dmax: Optional[int] = None
    hmax: Optional[int] = None
    jmax: Optional[int] = None
    mmax: Optional[int] = None
    order: int = 3
    dps: int = DEFAULT_DPS
    digits: int = 30
    tol: Optional[str] = None
    extra: dict = field(default_factory=dict)

    def validate(self) -> "RunConfig":
        if self.dps < MIN_DPS:
            raise UsageError(f"precision must be >= {MIN_DPS} digits, got {self.dps}")
        if self.digits < 1:
            raise UsageError("--digits must be positive")
        for lo, hi in (("gmin", "gmax"), ("dmin", "dmax")):
            a, b = getattr(self, lo), getattr(self, hi)
            if a is not None and b is not None and a > b:
                raise UsageError(f"empty range: --{lo} {a} > --{hi} {b}")
        if self.geometry and self.geometry not in GENERATED + tuple(SAMPLES) and self.input is None:
            raise UsageError(f"unknown geometry {self.geometry!r}")
        return self

    def echo(self) -> dict:
        out = {k: v for k, v in asdict(self).items() if k not in ("output", "csv", "extra") and v is not None}
        out.update(self.extra)
        return out


# ---------------------------------------------------------------------------
# helpers


def _env_dps() -> int:
    raw = os.environ.get(PRECISION_ENV)
    if raw is None:
        return DEFAULT_DPS
    try:
        return int(raw)
    except ValueError:
        raise UsageError(f"{PRECISION_ENV} must be an integer, got {raw!r}") from None


def _need(cfg: RunConfig, *names: str):
    missing = [n for n in names if getattr(cfg, n) is None]
    if missing:
        raise UsageError("missing required option(s): " + ", ".join("--" + m for m in missing))


def _t(cfg: RunConfig):
    _need(cfg, "t")
    return mpmath.mpf(cfg.t)


def _num(x, digits: int):
    if isinstance(x, Fraction):
        return rational_str(x)
    if isinstance(x, int):
        return str(x)
    if x is None:
        return None
    return mp_str(x, digits)


def _sample_table(name: str) -> GvTable:
    ref = resources.files("gwasym").joinpath("data", SAMPLES[name])
    with resources.as_file(ref) as path:
        return load_table(path)


def _emit(text: str, path: Optional[str]):
    if path:
        atomic_write(path, text)
    else:
        sys.stdout.write(text)


def _csv_text(header: Sequence[str], rows: list) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def _conifold_table(gmin: int, gmax: int, dmax: int) -> GwTable:
    return GwTable("conifold", {(g, d): conifold_gw(g, d) for g in range(max(gmin, 2), gmax + 1) for d in range(1, dmax + 1)}, genus_bound("conifold"))


def _xp_table(p: int, gmin: int, gmax: int, dmin: int, dmax: int) -> GwTable:
    ents = {(g, d): xp_gw(g, d, p) for g in range(gmin, gmax + 1) for d in range(dmin, dmax + 1)}
    return GwTable(f"xp{p}", ents, genus_bound(f"xp{p}"))


def _hurwitz_gw_table(gmin: int, gmax: int, dmin: int, dmax: int) -> GwTable:
    full = hurwitz_table(gmax, dmax)
    return GwTable("hurwitz", {k: v for k, v in full.items() if k[0] >= gmin and k[1] >= dmin})


def _table_for(cfg: RunConfig, gmin: int, gmax: int, dmax: int, dmin: int = 1) -> GwTable:
    """GW table from ``--input`` or generated for ``--geometry``."""
    if cfg.input:
        t = load_table(cfg.input)
        return t if isinstance(t, GwTable) else gv_to_gw(t, gmax, max(t.degrees))
    geo = cfg.geometry or "conifold"
    if geo == "conifold":
        return _conifold_table(gmin, gmax, dmax)
    if geo == "xp":
        _need(cfg, "p")
        return _xp_table(cfg.p, gmin, gmax, dmin, dmax)
    if geo == "hurwitz":
        return _hurwitz_gw_table(gmin, gmax, dmin, dmax)
    if geo in SAMPLES:
        gv = _sample_table(geo)
        return gv_to_gw(gv, gmax, max(gv.degrees))
    raise UsageError(f"unknown geometry {geo!r}")


def _default_tc(cfg: RunConfig):
    if cfg.extra.get("t_c") is not None:
        return mpmath.mpmathify(cfg.extra["t_c"])
    geo = cfg.geometry
    if geo == "conifold" or geo is None:
        return mpmath.mpf(0)
    if geo == "xp":
        _need(cfg, "p")
        return xp_critical(cfg.p)[1]
    if geo == "hurwitz":
        return mpmath.mpf(1)
    raise UsageError("--t-c is required for this geometry")


def _n01(cfg: RunConfig) -> int:
    if cfg.extra.get("n01") is not None:
        return int(cfg.extra["n01"])
    geo = cfg.geometry or "conifold"
    if geo == "conifold":
        return 1
    spec = geometry_spec(geo, cfg.p) if geo == "xp" else geometry_spec(geo)
    if spec.n01 is None:
        raise UsageError("--n01 is required for this geometry")
    return spec.n01


# ---------------------------------------------------------------------------
# gen / convert


def cmd_gen(cfg: RunConfig) -> str:
    geo = cfg.geometry
    if geo is None:
        raise UsageError("gen needs --geometry")
    if geo == "conifold":
        gmin = cfg.g if cfg.g is not None else (cfg.gmin if cfg.gmin is not None else 2)
        gmax = cfg.g if cfg.g is not None else cfg.gmax
        if gmax is None or cfg.dmax is None:
            raise UsageError("conifold needs --gmax (or --g) and --dmax")
        if gmin < 2:
            raise UsageError("conifold closed form starts at g = 2")
        return dump_table(_conifold_table(gmin, gmax, cfg.dmax))
    if geo == "xp":
        _need(cfg, "p")
        gmin, gmax = _genus_range(cfg)
        dmin, dmax = _degree_range(cfg)
        if gmax > 4:
            raise UsageError("bundled local-curve coefficients reach g = 4")
        return dump_table(_xp_table(cfg.p, gmin, gmax, dmin, dmax))
    if geo == "hurwitz":
        gmin, gmax = _genus_range(cfg)
        dmin, dmax = _degree_range(cfg)
        if gmax > 4:
            raise UsageError("bundled coefficients reach g = 4")
        return dump_table(_hurwitz_gw_table(gmin, gmax, dmin, dmax))
    if geo in SAMPLES:
        gv = _sample_table(geo)
        if (cfg.to or "gv") == "gv":
            return dump_table(gv)
        return dump_table(gv_to_gw(gv, cfg.gmax if cfg.gmax is not None else 4, max(gv.degrees)))
    raise UsageError(f"unknown geometry {geo!r}")


def _genus_range(cfg: RunConfig):
    if cfg.g is not None:
        return cfg.g, cfg.g
    if cfg.gmax is None:
        raise UsageError("need --g or --gmax")
    return (cfg.gmin if cfg.gmin is not None else 0), cfg.gmax


def _degree_range(cfg: RunConfig):
    if cfg.d is not None:
        return cfg.d, cfg.d
    if cfg.dmax is None:
        raise UsageError("need --d or --dmax")
    return (cfg.dmin if cfg.dmin is not None else 1), cfg.dmax


def dump_abc(abc) -> str:
    out = [f"# geometry: {abc.geometry}", "# kind: abc"]
    out += [f"a\t{d}\t{v}" for d, v in sorted(abc.a.items())]
    out += [f"b\t{d}\t{m}\t{v}" for (d, m), v in sorted(abc.b.items())]
    out += [f"c\t{d}\t{v}" for d, v in sorted(abc.c.items())]
    return "\n".join(out) + "\n"


def cmd_convert(cfg: RunConfig) -> str:
    if cfg.input is None or cfg.to not in ("gv", "gw", "abc"):
        raise UsageError("convert needs --input and --to gv|gw|abc")
    table = load_table(cfg.input)
    if cfg.to == "gw":
        if isinstance(table, GwTable):
            return dump_table(table)
        gmax = cfg.gmax if cfg.gmax is not None else max(table.G(d) for d in table.degrees)
        return dump_table(gv_to_gw(table, gmax, cfg.dmax or max(table.degrees)))
    gv = table if isinstance(table, GvTable) else gw_to_gv(table, table.bound)
    if cfg.to == "gv":
        return dump_table(gv)
    abc = gv_to_abc(gv)
    if not abc.is_integral():
        raise DataInconsistencyError("abc coefficients are not integral")
    return dump_abc(abc)


# ---------------------------------------------------------------------------
# analyses; each returns (results dict, csv header, csv rows)


def _an_poly(cfg: RunConfig):
    hmax = cfg.hmax if cfg.hmax is not None else 3
    if hmax < 0:
        raise UsageError("--hmax must be >= 0")
    P = gen_diag_polys(hmax)
    res = {"P": {str(h): [rational_str(c) for c in P[h].coeffs] for h in range(hmax + 1)}}
    rows = [[h, k, rational_str(c)] for h in range(hmax + 1) for k, c in enumerate(P[h].coeffs)]
    return res, ["h", "power_of_q", "coefficient"], rows


def _an_diagonal(cfg: RunConfig):
    _need(cfg, "t", "q")
    t = int(cfg.t)
    if t != mpmath.mpf(cfg.t) or t % 2:
        raise UsageError("--t must be an even integer")
    dmax = cfg.dmax or 40
    if cfg.input:
        gw = _table_for(cfg, 0, t // 2 * dmax + cfg.q, dmax)
    elif (cfg.geometry or "conifold") == "conifold":
        ents = {}
        for d in range(1, dmax + 1):
            g = t // 2 * d + cfg.q
            if g >= 2:
                ents[(g, d)] = conifold_gw(g, d)
        gw = GwTable("conifold", ents)
    else:
        raise UsageError("diagonal analysis needs --geometry conifold or --input")
    fit = diagonal_action_extract(gw, t, cfg.q, cfg.order)
    expected = 2 * mpmath.pi * t
    hmax = cfg.hmax if cfg.hmax is not None else 5
    n01 = _n01(cfg)
    seq = diagonal_sequence(gw, t, cfg.q)
    raw = dict(fit.trace["raw"].points)
    acc = dict(fit.trace["richardson"].points)
    rows, last_ratio = [], None
    for d, val in seq.points:
        g = t // 2 * d + cfg.q
        terms = diagonal_terms(n01, t, cfg.q, g, hmax)
        pred = mpmath.fsum(terms)
        last_ratio = val / pred
        rows.append([d, g, _num(raw.get(d), cfg.digits), _num(acc.get(d), cfg.digits), _num(last_ratio, cfg.digits)])
    res = {
        "action": fit.value,
        "uncertainty": fit.uncertainty,
        "expected_2pi_t": expected,
        "relative_error": abs(fit.value / expected - 1),
        "points": fit.extras["points"],
        "hmax": hmax,
        "n01": n01,
        "last_ratio_actual_over_prediction": last_ratio,
    }
    return res, ["d", "g", "action_ratio_estimate", "action_richardson", "actual_over_prediction"], rows


def _an_saddle(cfg: RunConfig):
    ts = [mpmath.mpf(x) for x in str(cfg.t).split(",")] if cfg.t is not None else []
    if not ts:
        raise UsageError("saddle needs --t (comma-separated list for a linear fit)")
    if len(ts) == 1 and cfg.g is not None:
        g, t = cfg.g, ts[0]
        dmax = cfg.dmax or max(20, int(3 * (2 * g - 3) / t) + 10)
        gw = _table_for(cfg, g, g, dmax)
        sc = saddle_scan(gw, g, t)
        rows = [[d, _num(v, cfg.digits)] for d, v in sc.profile.items()]
        res = {
            "g": g,
            "t": t,
            "argmax": sc.argmax,
            "peaks": list(sc.peaks),
            "refined_parabola": sc.refined,
            "refined_poly": sc.refined_poly,
            "a2": sc.a2,
            "boundary_warning": sc.boundary,
            "continuum_saddle_conifold": (2 * g - 3) / t,
        }
        return res, ["d", "relative_contribution"], rows
    _need(cfg, "gmin", "gmax")
    dmax = cfg.dmax or max(20, int(3 * (2 * cfg.gmax - 3) / min(ts)) + 10)
    gw = _table_for(cfg, cfg.gmin, cfg.gmax, dmax)
    fit = saddle_linear_fit(gw, range(cfg.gmin, cfg.gmax + 1), ts, peak=cfg.extra.get("peak", "global"))
    per_t = {
        mp_str(t, 6): {"a0": ln.intercept, "a1": ln.slope, "a0_se": ln.intercept_se, "a1_se": ln.slope_se, "r2": ln.r2}
        for t, ln in fit.per_t.items()
    }
    res = {
        "per_t": per_t,
        "inv_a1_slope": fit.inv_a1.slope,
        "inv_a1_intercept": fit.inv_a1.intercept,
        "inv_a1_slope_se": fit.inv_a1.slope_se,
        "inv_a0_slope": fit.inv_a0.slope,
        "inv_a0_intercept": fit.inv_a0.intercept,
        "inv_a0_slope_se": fit.inv_a0.slope_se,
        "a2_mean": {mp_str(t, 6): v for t, v in fit.a2.items()},
    }
    rows = [[_num(t, 6), g, sc.argmax, _num(sc.refined_poly, cfg.digits)] for (g, t), sc in sorted(fit.scans.items(), key=lambda kv: (kv[0][1], kv[0][0]))]
    return res, ["t", "g", "argmax_degree", "refined_degree"], rows


def _growth_table(cfg: RunConfig):
    _need(cfg, "g")
    dmin, dmax = (cfg.dmin or 1), cfg.dmax
    if dmax is None and not cfg.input:
        raise UsageError("need --dmax")
    return _table_for(cfg, cfg.g, cfg.g, dmax or 0, dmin)


def _trace_rows(fit, digits):
    raw = dict(fit.trace["raw"].points)
    acc = dict(fit.trace["richardson"].points)
    return [[i, _num(v, digits), _num(acc.get(i), digits)] for i, v in raw.items()]


def _an_fit_rate(cfg: RunConfig):
    gw = _growth_table(cfg)
    col = {d: v for d, v in gw.column(cfg.g).items() if d >= (cfg.dmin or 1)}
    fit = fit_exponential_rate({d: big(v) for d, v in col.items()}, order=cfg.order)
    res = {"rate": fit.value, "uncertainty": fit.uncertainty, "phase_per_degree": fit.phase, "sign_flips": fit.extras["sign_flips"]}
    return res, ["d", "log_ratio", "richardson"], _trace_rows(fit, cfg.digits)


def _an_fit_power(cfg: RunConfig):
    gw = _growth_table(cfg)
    fit = fit_power_exponent(gw, cfg.g, _default_tc(cfg), order=cfg.order, method=cfg.extra.get("method", "eliminate"))
    res = {"power": fit.value, "uncertainty": fit.uncertainty, "expected_2g_minus_3": 2 * cfg.g - 3, "method": fit.extras["method"]}
    return res, ["l", "estimate", "richardson"], _trace_rows(fit, cfg.digits)


def _an_fit_log(cfg: RunConfig):
    gw = _growth_table(cfg)
    power = cfg.extra.get("power")
    power = mpmath.mpmathify(power) if power is not None else 2 * cfg.g - 3
    fit = fit_log_exponent(gw, cfg.g, _default_tc(cfg), power, order=cfg.order)
    res = {"log_exponent": fit.value, "uncertainty": fit.uncertainty, "power_used": power}
    return res, ["l", "estimate", "richardson"], _trace_rows(fit, cfg.digits)


def _an_action(cfg: RunConfig):
    t = _t(cfg)
    gmin = cfg.gmin if cfg.gmin is not None else 2
    gmax = cfg.gmax if cfg.gmax is not None else 40
    if cfg.input:
        gw = load_table(cfg.input)
        if isinstance(gw, GvTable):
            gw = gv_to_gw(gw, gmax, max(gw.degrees))
        fs = SequenceSample(tuple((g, free_energy_truncated(gw, g, t).value) for g in range(gmin, gmax + 1)))
    elif (cfg.geometry or "conifold") == "conifold":
        fs = SequenceSample(tuple((g, conifold_free_energy(g, t)) for g in range(max(gmin, 2), gmax + 1)))
    else:
        raise UsageError("action analysis needs --geometry conifold or --input")
    fit = estimate_action_from_fg(fs, cfg.order, complex_mode=bool(cfg.extra.get("complex")))
    res = {
        "action": fit.value,
        "uncertainty": fit.uncertainty,
        "beta": fit.beta,
        "one_loop": fit.one_loop,
        "kahler_action_2pi_t": 2 * mpmath.pi * t,
    }
    a2 = dict(fit.trace["A2"].points)
    beta = dict(fit.trace["beta"].points)
    rows = [[g, _num(mpmath.sqrt(a2[g]), cfg.digits), _num(beta[g], cfg.digits)] for g in sorted(a2)]
    return res, ["g", "action_estimate", "beta_estimate"], rows


def _an_tower(cfg: RunConfig):
    t = _t(cfg)
    _need(cfg, "mmax")
    gmin = cfg.gmin if cfg.gmin is not None else (cfg.g or 2)
    gmax = cfg.gmax if cfg.gmax is not None else (cfg.g or gmin)
    geo = cfg.geometry or "conifold"
    rows, res = [], {}
    for g in range(gmin, gmax + 1):
        if geo == "conifold":
            exact = conifold_free_energy(g, t)
            for m in range(cfg.mmax + 1):
                pred = conifold_tower_prediction(g, t, m, nmax=None)
                err = abs(pred / exact - 1)
                rows.append([g, m, _num(pred, cfg.digits), _num(err, cfg.digits)])
                res[f"g{g}_m{m}_relative_error"] = err
        elif geo == "xp":
            for m in range(cfg.mmax + 1):
                pred = xp_tower_prediction(g, t, m)
                rows.append([g, m, _num(pred, cfg.digits), ""])
                res[f"g{g}_m{m}_prediction"] = pred
        else:
            raise UsageError("tower analysis supports conifold and xp")
    return res, ["g", "mmax", "prediction", "relative_error"], rows


def _an_large_degree(cfg: RunConfig):
    _need(cfg, "g", "d")
    geo = cfg.geometry or "xp"
    corrected = not cfg.extra.get("uncorrected_tables", False)
    if geo == "xp":
        _need(cfg, "p")
        jmax = cfg.jmax if cfg.jmax is not None else 4
        terms = xp_large_degree_terms(cfg.g, cfg.d, cfg.p, jmax, corrected)
        actual = big(xp_gw_poly(cfg.g, cfg.d, cfg.p))
    elif geo == "hurwitz":
        jmax = cfg.jmax if cfg.jmax is not None else 7
        from .geometries.hurwitz import hurwitz_gw

        terms = hurwitz_large_degree_terms(cfg.g, cfg.d, jmax, corrected)
        actual = big(hurwitz_gw(cfg.g, cfg.d))
    else:
        raise UsageError("large-degree supports xp and hurwitz")
    rows, partial, res = [], 0, {"actual": actual, "corrected_tables": corrected}
    for j, term in enumerate(terms):
        partial += term
        ratio = partial / actual
        rows.append([j, _num(partial, cfg.digits), _num(ratio, cfg.digits), agreement_digits(partial, actual)])
        res[f"jmax{j}_ratio"] = ratio
    return res, ["jmax", "prediction", "prediction_over_actual", "agreeing_digits"], rows


def _an_toda(cfg: RunConfig):
    oq = cfg.extra.get("order_q", 6)
    og = cfg.extra.get("order_g", 6)
    r = toda_residual(oq, og)
    return {"max_residual": r, "order_q": oq, "order_g": og}, ["order_q", "order_g", "max_residual"], [[oq, og, rational_str(r)]]


ANALYSIS_FUNCS: dict[str, Callable] = {
    "poly": _an_poly,
    "diagonal": _an_diagonal,
    "saddle": _an_saddle,
    "fit-rate": _an_fit_rate,
    "fit-power": _an_fit_power,
    "fit-log": _an_fit_log,
    "action": _an_action,
    "tower": _an_tower,
    "large-degree": _an_large_degree,
    "toda": _an_toda,
}


def _render(res: Any, digits: int):
    if isinstance(res, dict):
        return {k: _render(v, digits) for k, v in res.items()}
    if isinstance(res, (list, tuple)):
        return [_render(v, digits) for v in res]
    if isinstance(res, (bool, int, str)) or res is None:
        return res
    if isinstance(res, Fraction):
        return rational_str(res)
    return mp_str(res, digits)


def _min_agreement(a: Any, b: Any) -> Optional[int]:
    if isinstance(a, dict):
        vals = [_min_agreement(a[k], b[k]) for k in a if k in b]
        vals = [v for v in vals if v is not None]
        return min(vals) if vals else None
    if isinstance(a, (list, tuple)):
        vals = [_min_agreement(x, y) for x, y in zip(a, b)]
        vals = [v for v in vals if v is not None]
        return min(vals) if vals else None
    if isinstance(a, (mpmath.mpf, mpmath.mpc)):
        if a == b:
            return None
        return agreement_digits(a, b) if not isinstance(a, mpmath.mpc) else min(
            agreement_digits(a.real, b.real) if a.real != b.real else 10**6,
            agreement_digits(a.imag, b.imag) if a.imag != b.imag else 10**6,
        )
    return None


def cmd_analyze(cfg: RunConfig) -> tuple[str, Optional[str]]:
    if cfg.analysis not in ANALYSIS_FUNCS:
        raise UsageError(f"unknown analysis {cfg.analysis!r}; choose from {', '.join(ANALYSES)}")
    fn = ANALYSIS_FUNCS[cfg.analysis]
    with mpmath.workdps(cfg.dps):
        res, header, rows = fn(cfg)
    with mpmath.workdps(2 * cfg.dps):
        res2, _, _ = fn(cfg)
    agree = _min_agreement(res, res2)
    digits = cfg.digits if agree is None else max(1, min(cfg.digits, agree))
    with mpmath.workdps(2 * cfg.dps):
        rendered = _render(res2, digits)
    report = {
        "analysis": cfg.analysis,
        "config": _render(cfg.echo(), digits),
        "package_version": __version__,
        "precision_digits": cfg.dps,
        "richardson_order": cfg.order,
        "precision_doubling_agreement_digits": agree,
        "reported_digits": digits,
        "results": rendered,
    }
    text = json.dumps(report, indent=2, sort_keys=True) + "\n"
    return text, _csv_text(header, rows)


# ---------------------------------------------------------------------------
# argument parsing


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="gwasym", description="Exact GW/GV tables and their large-order asymptotics.")
    ap.add_argument("--version", action="version", version=f"gwasym {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--geometry")
        p.add_argument("--input")
        p.add_argument("-o", "--output")
        p.add_argument("--p", type=int)
        p.add_argument("--g", type=int)
        p.add_argument("--d", type=int)
        p.add_argument("--gmin", type=int)
        p.add_argument("--gmax", type=int)
        p.add_argument("--dmin", type=int)
        p.add_argument("--dmax", type=int)
        p.add_argument("--dps", type=int, help=f"working precision in digits (default ${PRECISION_ENV} or {DEFAULT_DPS})")

    g = sub.add_parser("gen", help="generate an invariant table")
    common(g)
    g.add_argument("--to", choices=("gv", "gw"), help="representation for sample geometries")

    c = sub.add_parser("convert", help="convert between gv, gw and abc representations")
    common(c)
    c.add_argument("--to", required=True, choices=("gv", "gw", "abc"))

    a = sub.add_parser("analyze", help="run an asymptotic analysis")
    a.add_argument("analysis", choices=ANALYSES)
    common(a)
    a.add_argument("--t", help="Kahler parameter; comma-separated list for saddle fits")
    a.add_argument("--q", type=int)
    a.add_argument("--hmax", type=int)
    a.add_argument("--jmax", type=int)
    a.add_argument("--mmax", type=int)
    a.add_argument("--order", type=int, default=3, help="Richardson order")
    a.add_argument("--digits", type=int, default=30, help="maximum significant digits reported")
    a.add_argument("--csv", help="write the data series to this CSV file")
    a.add_argument("--t-c", dest="t_c", help="critical exponent rate (fit-power, fit-log)")
    a.add_argument("--power", help="power of d assumed by fit-log")
    a.add_argument("--n01", type=int, help="genus-0 degree-1 GV invariant for diagonal predictions")
    a.add_argument("--method", choices=("eliminate", "combination"), default="eliminate")
    a.add_argument("--peak", choices=("global", "lowest", "highest"), default="global")
    a.add_argument("--complex", action="store_true", help="allow sign-oscillating F_g in action fits")
    a.add_argument("--uncorrected-tables", action="store_true", help="use the large-degree tables without corrections")
    a.add_argument("--order-q", type=int, default=6)
    a.add_argument("--order-g", type=int, default=6)
    return ap


def _config(ns: argparse.Namespace) -> RunConfig:
    dps = ns.dps if ns.dps is not None else _env_dps()
    cfg = RunConfig(
        command=ns.command,
        analysis=getattr(ns, "analysis", None),
        geometry=ns.geometry,
        input=ns.input,
        output=ns.output,
        csv=getattr(ns, "csv", None),
        to=getattr(ns, "to", None),
        p=ns.p,
        t=getattr(ns, "t", None),
        q=getattr(ns, "q", None),
        g=ns.g,
        d=ns.d,
        gmin=ns.gmin,
        gmax=ns.gmax,
        dmin=ns.dmin,
        dmax=ns.dmax,
        hmax=getattr(ns, "hmax", None),
        jmax=getattr(ns, "jmax", None),
        mmax=getattr(ns, "mmax", None),
        order=getattr(ns, "order", 3),
        dps=dps,
        digits=getattr(ns, "digits", 30),
    )
    if ns.command == "analyze":
        extra = {}
        if ns.t_c is not None:
            extra["t_c"] = ns.t_c
        if ns.power is not None:
            extra["power"] = ns.power
        if ns.n01 is not None:
            extra["n01"] = ns.n01
        if ns.method != "eliminate":
            extra["method"] = ns.method
        if ns.peak != "global":
            extra["peak"] = ns.peak
        if ns.complex:
            extra["complex"] = True
        if ns.uncorrected_tables:
            extra["uncorrected_tables"] = True
        if ns.analysis == "toda":
            extra["order_q"] = ns.order_q
            extra["order_g"] = ns.order_g
        cfg.extra = extra
    return cfg.validate()


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else EXIT_OK
    try:
        cfg = _config(ns)
        with mpmath.workdps(cfg.dps):
            if cfg.command == "gen":
                _emit(cmd_gen(cfg), cfg.output)
            elif cfg.command == "convert":
                _emit(cmd_convert(cfg), cfg.output)
            else:
                report, table = cmd_analyze(cfg)
                _emit(report, cfg.output)
                if cfg.csv:
                    atomic_write(cfg.csv, table)
    except (UsageError, TableParseError, FileNotFoundError) as exc:
        print(f"gwasym: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (DataInsufficientError, IncompleteDataError) as exc:
        print(f"gwasym: insufficient data: {exc}", file=sys.stderr)
        return EXIT_DATA
    except DataInconsistencyError as exc:
        print(f"gwasym: inconsistency: {exc}", file=sys.stderr)
        return EXIT_INCONSISTENT
    except ValueError as exc:
        msg = str(exc)
        if "checksum" in msg:
            print(f"gwasym: inconsistency: {msg}", file=sys.stderr)
            return EXIT_INCONSISTENT
        print(f"gwasym: error: {msg}", file=sys.stderr)
        return EXIT_USAGE
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
