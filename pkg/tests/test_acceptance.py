"""Acceptance criteria, one test each; a PASS/FAIL line per criterion is printed in the summary."""

import json
import random
import time
from fractions import Fraction
from math import factorial

import mpmath
import pytest

from gwasym.arith import big
from gwasym.asymptotics import (
    SequenceSample,
    diagonal_action_extract,
    diagonal_prediction,
    diagonal_terms,
    estimate_action_from_fg,
    fit_exponential_rate,
    fit_log_exponent,
    fit_power_exponent,
    gen_diag_polys,
    saddle_linear_fit,
    saddle_scan,
    xp_large_degree_prediction,
)
from gwasym.cli import main
from gwasym.geometries import (
    conifold_free_energy,
    conifold_gw,
    conifold_tower_prediction,
    hurwitz_closed,
    hurwitz_gw,
    hurwitz_gw_exact,
    hurwitz_large_genus_prediction,
    toda_residual,
    xp_gw_poly,
)
from gwasym.geometries.hurwitz import leading_coefficient
from gwasym.invariants import GvTable, abc_to_gw, arcsin_alpha, gv_to_abc, gv_to_gw, gw_to_gv, sine_coeff, sine_coeff_series

RESULTS: dict = {}

H_100_6_PREFIX = "36773029021136586120"


def report(key: str, ok: bool, detail: str):
    line = f"criterion {key}: {'PASS' if ok else 'FAIL'}  {detail}"
    RESULTS[key] = line
    print(line)
    return ok


def conifold_table(pairs):
    from gwasym.invariants import GwTable

    return GwTable("conifold", {(g, d): conifold_gw(g, d) for g, d in pairs})


def test_01_diag_polynomials():
    t0 = time.perf_counter()
    P = gen_diag_polys.__wrapped__(3)
    dt = time.perf_counter() - t0
    F = Fraction
    expected = [
        (F(1),),
        (F(-71, 12), F(12), F(-4)),
        (F(11545, 288), F(-131), F(419, 3), F(-176, 3), F(8)),
    ]
    ok = all(P[h].coeffs == expected[h] for h in range(3))
    ok = ok and P[3][0] == F(-17534803, 51840) and P[3].degree == 6 and dt < 30
    report("1", ok, f"P_3(0) = {P[3][0]}, {dt:.2f} s")
    assert ok


def test_02_sine_arcsin_duality():
    t0 = time.perf_counter()
    ok = all(sine_coeff(h, g) == sine_coeff_series(h, g) for g in range(13) for h in range(g + 1))
    for g in range(1, 13):
        for k in range(1, g + 1):
            s = sum(sine_coeff(h, g) * arcsin_alpha(h, k) for h in range(k, g + 1))
            ok = ok and s == (g == k)
    dt = time.perf_counter() - t0
    ok = ok and dt < 10
    report("2", ok, f"h <= g <= 12, {dt:.2f} s")
    assert ok


def test_03_round_trips():
    rng = random.Random(20240601)
    bad = 0
    for _ in range(100):
        ents = {}
        for d in range(1, 13):
            G = rng.randint(0, 10)
            for r in range(G + 1):
                ents[(r, d)] = rng.randint(-50, 50)
        gv = GvTable("random", ents, frozenset(range(1, 13)))
        gw = gv_to_gw(gv, 10, 12)
        back = gw_to_gv(gw)
        abc = gv_to_abc(gv)
        same = all(back.n(r, d) == gv.n(r, d) for d in range(1, 13) for r in range(11))
        same = same and all(abc_to_gw(abc, g, d) == v for (g, d), v in gw.entries.items())
        bad += not (same and abc.is_integral())
    report("3", bad == 0, f"{100 - bad}/100 tables exact")
    assert bad == 0


def test_04_degree_one_values():
    got = []
    for n01 in (3, -4, 2875):
        got.append(gv_to_gw(GvTable("x", {(0, 1): n01}, frozenset({1})), 2, 1).N(2, 1))
    ok = got == [Fraction(1, 80), Fraction(-1, 60), Fraction(575, 48)]
    report("4", ok, ", ".join(str(v) for v in got))
    assert ok


def test_05_conifold_diagonal():
    t0 = time.perf_counter()
    t, q, dmax = 6, 1, 40
    with mpmath.workdps(200):
        gw = conifold_table([(3 * d + q, d) for d in range(1, dmax + 1)])
        fit = diagonal_action_extract(gw, t, q, order=3)
        rel = abs(fit.value / (2 * mpmath.pi * t) - 1)
        g = 3 * dmax + q
        exact = big(conifold_gw(g, dmax)) * mpmath.exp(-dmax * t)
        err = abs(diagonal_prediction(1, t, q, g, 5) / exact - 1)
        bound = abs(diagonal_terms(1, t, q, g, 6)[6] / exact)
    dt = time.perf_counter() - t0
    ok = rel < 1e-6 and err < bound and dt < 300
    report("5", ok, f"action rel err {mpmath.nstr(rel, 3)}; hmax=5 err {mpmath.nstr(err, 3)} < h=6 term {mpmath.nstr(bound, 3)}; {dt:.1f} s")
    assert ok


def test_06_conifold_tower():
    t = 2
    mono = True
    with mpmath.workdps(400):
        for g in range(60, 101):
            exact = conifold_free_energy(g, t)
            errs = [abs(conifold_tower_prediction(g, t, m, nmax=None) / exact - 1) for m in range(7)]
            mono = mono and all(a > b for a, b in zip(errs, errs[1:]))
    with mpmath.workdps(150):
        exact = conifold_free_energy(100, t)
        err = abs(conifold_tower_prediction(100, t, 6, nmax=None) / exact - 1)
    ok = mono and err < mpmath.mpf(10) ** -30
    report("6", ok, f"strict decrease for g = 60..100: {mono}; g=100, mmax=6 rel err {mpmath.nstr(err, 3)} at 150 digits")
    assert ok


def test_07_xp_hurwitz_limit():
    ok = True
    for g in (2, 3, 4):
        for d in range(1, 7):
            deg = 2 * g + 2 * d - 2
            xs = [Fraction(3 + i) for i in range(deg + 2)]
            ys = [xp_gw_poly(g, d, x) for x in xs]
            top = leading_coefficient(ys[:-1], xs[:-1])
            ok = ok and leading_coefficient(ys, xs) == 0 and top == hurwitz_gw(g, d)
    report("7", ok, "g = 2..4, d = 1..6")
    assert ok


def _closed_form_values(d):
    return [(g, hurwitz_gw(g, d) * factorial(2 * g + 2 * d - 2), hurwitz_closed(g, d)) for g in (2, 3, 4)]


def test_08_hurwitz_closed_forms_and_toda():
    rows = _closed_form_values(2) + _closed_form_values(4)
    forms = all(a == b for _, a, b in rows)
    toda = toda_residual(6, 6)
    ok = forms and toda == 0
    report("8", ok, f"d = 2, 4 closed forms exact: {forms}; Toda residual through (Q^6, g^6) = {toda}")
    assert ok


@pytest.mark.xfail(strict=True, reason="tabulated degree-3 closed form disagrees with the exact counts")
def test_08_hurwitz_degree_three_closed_form():
    rows = _closed_form_values(3)
    ok = all(a == b for _, a, b in rows)
    detail = "; ".join(f"g={g}: exact {a}, closed form {b}" for g, a, b in rows)
    report("8 (d = 3)", ok, detail)
    assert ok


def test_09_xp_large_degree():
    with mpmath.workdps(60):
        exact = big(xp_gw_poly(3, 100, 3))
        errs = [abs(xp_large_degree_prediction(3, 100, 3, j) / exact - 1) for j in (0, 2, 4)]
    ok = errs[0] > errs[1] > errs[2] and errs[2] * 10 <= errs[0] and 0.5 <= errs[0] <= 0.95
    report("9", ok, "errors jmax=0,2,4: " + ", ".join(mpmath.nstr(e, 3) for e in errs))
    assert ok


def _leading_digits(a, b) -> int:
    sa, sb = mpmath.nstr(a, 120, strip_zeros=False), mpmath.nstr(b, 120, strip_zeros=False)
    sa, sb = sa.replace(".", "").split("e")[0], sb.replace(".", "").split("e")[0]
    n = 0
    for x, y in zip(sa, sb):
        if x != y:
            break
        n += 1
    return n


def test_10_hurwitz_large_genus_digits():
    exact = hurwitz_gw_exact(100, 6) * factorial(210)
    assert exact.denominator == 1 and str(exact.numerator).startswith(H_100_6_PREFIX)
    with mpmath.workdps(300):
        e = mpmath.mpf(exact.numerator)
        counts = [_leading_digits(hurwitz_large_genus_prediction(100, 6, n), e) for n in (1, 2, 3, 4)]
    ok = all(a < b for a, b in zip(counts, counts[1:])) and counts[0] >= 30
    report("10", ok, f"leading digits with 1..4 terms: {counts}")
    assert ok


def test_11_synthetic_fitters():
    rho = mpmath.mpf("2.90759")
    worst = mpmath.mpf(0)
    for p, delta in ((3, 2), (1, 1), (-1, 0)):
        col = {d: mpmath.mpf("2.5") * mpmath.mpf(d) ** p * mpmath.exp(rho * d) * mpmath.log(d) ** delta for d in range(2, 402)}
        worst = max(
            worst,
            abs(fit_exponential_rate(col, drange=range(300, 401)).value - rho),
            abs(fit_power_exponent(col, None, rho).value - p),
            abs(fit_log_exponent(col, None, rho, p).value - delta),
        )
    A, beta, S = mpmath.mpf("7.3"), mpmath.mpf("0.5"), mpmath.mpf("1.7")
    fs = SequenceSample.from_function(lambda g: S * mpmath.gamma(2 * g - beta) / A ** (2 * g - beta), range(3, 30))
    fit = estimate_action_from_fg(fs)
    eps = mpmath.mpf(10) ** (-mpmath.mp.dps + 10)
    exact_ok = abs(fit.value - A) < eps * A and abs(fit.beta - beta) < eps * 10
    ok = worst < 1e-3 and exact_ok
    report("11", ok, f"worst (rho, p, delta) error {mpmath.nstr(worst, 3)}; action/beta exact to working precision: {exact_ok}")
    assert ok


def test_12_saddle():
    gw = conifold_table([(g, d) for g in range(20, 61) for d in range(1, 61)])
    within = all(
        abs(saddle_scan(gw, g, t).argmax - mpmath.mpf(2 * g - 3) / t) <= 1 for g in range(20, 61) for t in (4, 6, 8)
    )
    fit = saddle_linear_fit(gw, range(20, 61), [4, 5, 6, 7, 8])
    s1, s0 = fit.inv_a1.slope, fit.inv_a0.slope
    ok = within and abs(s1 - mpmath.mpf("0.5")) <= 0.005 and abs(s0 + mpmath.mpf(1) / 3) <= 0.01
    report("12", ok, f"argmax within 1: {within}; 1/a1 slope {mpmath.nstr(s1, 6)}, 1/a0 slope {mpmath.nstr(s0, 6)}")
    assert ok


CLI_RUNS = [
    ["gen", "--geometry", "conifold", "--gmax", "8", "--dmax", "12"],
    ["gen", "--geometry", "xp", "--p", "4", "--gmax", "4", "--dmax", "5"],
    ["gen", "--geometry", "hurwitz", "--gmax", "4", "--dmax", "6"],
    ["gen", "--geometry", "quintic", "--to", "gw", "--gmax", "2"],
    ["analyze", "poly", "--hmax", "3"],
    ["analyze", "diagonal", "--t", "6", "--q", "1", "--dmax", "16"],
    ["analyze", "fit-rate", "--geometry", "xp", "--p", "3", "--g", "2", "--dmax", "40"],
    ["analyze", "fit-power", "--geometry", "conifold", "--g", "4", "--dmax", "150"],
    ["analyze", "fit-log", "--geometry", "conifold", "--g", "4", "--dmax", "150", "--power", "5"],
    ["analyze", "action", "--t", "3", "--gmin", "10", "--gmax", "26"],
    ["analyze", "saddle", "--t", "4,5,6,7", "--gmin", "20", "--gmax", "26", "--dmax", "30"],
    ["analyze", "tower", "--t", "2", "--g", "40", "--mmax", "4"],
    ["analyze", "large-degree", "--geometry", "xp", "--p", "3", "--g", "3", "--d", "60", "--jmax", "4"],
    ["analyze", "toda", "--order-q", "4", "--order-g", "4"],
]


def _numbers(obj, out):
    if isinstance(obj, dict):
        for k in sorted(obj):
            _numbers(obj[k], out)
    elif isinstance(obj, list):
        for v in obj:
            _numbers(v, out)
    elif isinstance(obj, str):
        try:
            out.append(mpmath.mpmathify(obj))
        except (ValueError, TypeError):
            pass
    return out


def test_13_determinism(tmp_path):
    ok = True
    for i, argv in enumerate(CLI_RUNS):
        a, b = tmp_path / f"{i}a", tmp_path / f"{i}b"
        codes = (main(argv + ["-o", str(a), "--dps", "60"]), main(argv + ["-o", str(b), "--dps", "60"]))
        ok = ok and codes == (0, 0) and a.read_bytes() == b.read_bytes()
        if argv[0] == "analyze":
            c = tmp_path / f"{i}c"
            ok = ok and main(argv + ["-o", str(c), "--dps", "120"]) == 0
            lo, hi = json.loads(a.read_text()), json.loads(c.read_text())
            digits = lo["reported_digits"]
            for x, y in zip(_numbers(lo["results"], []), _numbers(hi["results"], [])):
                scale = max(abs(x), abs(y))
                if scale and abs(x - y) > scale * mpmath.mpf(10) ** (1 - digits):
                    ok = False
    report("13", ok, f"{len(CLI_RUNS)} commands byte-identical on re-run; analyses stable to reported digits at 60 vs 120")
    assert ok
