from fractions import Fraction
from math import factorial

import mpmath
import pytest
import sympy as sp

from gwasym.arith import f_cs
from gwasym.geometries import (
    TableParseError,
    conifold_free_energy,
    conifold_gw,
    dump_table,
    geometry_spec,
    hurwitz_closed,
    hurwitz_genus01,
    hurwitz_gw,
    hurwitz_gw_exact,
    hurwitz_large_genus_prediction,
    load_table,
    reflection_constant,
    toda_residual,
    write_table,
    xp_critical,
    xp_genus01,
    xp_gw,
    xp_gw_poly,
)
from gwasym.geometries.hurwitz import hurwitz_table, leading_coefficient
from gwasym.geometries.local_curve import data_checksums, xp_coefficients
from gwasym.invariants import GwTable, gw_to_gv

DATA = "src/gwasym/data/"

H_100_6_PREFIX = "36773029021136586120"


def mirror_map_series(g: int, p: int, dmax: int) -> list:
    """Expand F_g(w) through the inverse of Q = w^(f-1) - w^f with sympy."""
    f = (p - 1) ** 2
    Q = sp.Symbol("Q")
    eps = Q
    for _ in range(dmax + 1):
        eps = sp.series(Q / (1 - eps) ** (f - 1), Q, 0, dmax + 1).removeO()
    w = 1 - eps
    wc = sp.Rational(p * (p - 2), f)
    co = xp_coefficients(g)
    F = sum(sp.Rational(str(co.a(n, f))) * (w - 1) ** n for n in range(1, 5 * (g - 1) + 1))
    F = F / (w - wc) ** (5 * (g - 1))
    s = sp.series(F, Q, 0, dmax + 1).removeO()
    return [Fraction(str(s.coeff(Q, d))) for d in range(1, dmax + 1)]


@pytest.mark.parametrize("g", [2, 3])
def test_jacobi_sum_matches_mirror_map(g):
    assert mirror_map_series(g, 3, 4) == [xp_gw_poly(g, d, 3) for d in range(1, 5)]


def test_critical_point():
    wc, tc = xp_critical(3)
    assert wc == Fraction(3, 4)
    assert mpmath.almosteq(tc, mpmath.log(mpmath.mpf(3) ** -3 * 2**8))


def test_geometry_spec():
    s = geometry_spec("xp", p=4)
    assert s.f == 9 and s.n01 == -1 and s.w_c == Fraction(8, 9)
    assert geometry_spec("conifold").n01 == 1
    with pytest.raises(ValueError):
        geometry_spec("xp", p=2)


def test_degree_one_sign_convention():
    for p in (3, 4, 5, 6):
        assert xp_gw(0, 1, p) == (-1) ** (p - 1)


@pytest.mark.parametrize("p", [3, 4])
def test_xp_gv_integrality(p):
    gw = GwTable(f"xp{p}", {(g, d): xp_gw(g, d, p) for g in range(5) for d in range(1, 6)})
    gv = gw_to_gv(gw)
    assert gv.n(0, 1) == (-1) ** (p - 1)


@pytest.mark.parametrize("g,d", [(2, 3), (3, 2), (4, 4), (1, 5), (0, 4)])
def test_xp_polynomial_degree_in_p(g, d):
    deg = 2 * g + 2 * d - 2
    xs = [Fraction(3 + i) for i in range(deg + 2)]
    ys = [xp_gw_poly(g, d, x) for x in xs]
    # one extra node: the degree-(deg+1) coefficient vanishes
    assert leading_coefficient(ys, xs) == 0
    assert leading_coefficient(ys[:-1], xs[:-1]) != 0


def test_genus01_closed_forms():
    assert xp_genus01(0, 1, 3) == -1
    assert xp_genus01(0, 2, 3) == Fraction(-7, 8)
    with pytest.raises(ValueError):
        xp_genus01(2, 1, 3)


def test_laguerre_matches_character_oracle():
    for g in (2, 3, 4):
        for d in range(1, 7):
            assert hurwitz_gw(g, d) == hurwitz_gw_exact(g, d), (g, d)


def test_low_genus_hurwitz_matches_character_oracle():
    for g in (0, 1):
        for d in range(1, 6):
            assert hurwitz_genus01(g, d) == hurwitz_gw_exact(g, d), (g, d)


@pytest.mark.parametrize("d", [2, 4])
def test_hurwitz_closed_forms(d):
    for g in (2, 3, 4, 7):
        assert hurwitz_gw_exact(g, d) * factorial(2 * g + 2 * d - 2) == hurwitz_closed(g, d)


def test_hurwitz_degree_three_value():
    # the actual degree-3 count; hurwitz_closed keeps the other form
    for g in (2, 3, 4):
        assert hurwitz_gw_exact(g, 3) * factorial(2 * g + 4) == Fraction(3 ** (2 * g + 2) - 1, 2)


def test_toda_zero_and_detects_perturbation():
    assert toda_residual(6, 6) == 0
    table = hurwitz_table(4, 7)
    table[(2, 3)] += Fraction(1, 10**6)
    assert toda_residual(6, 6, table) != 0


def test_reflection_constants():
    assert [reflection_constant(g, samples=8) for g in (2, 3, 4)] == [5760, 1451520, 87091200]


def test_large_genus_hurwitz_digits():
    exact = str(hurwitz_gw_exact(100, 6) * factorial(2 * 100 + 10))
    exact = str(int(Fraction(exact)))
    assert exact.startswith(H_100_6_PREFIX)
    with mpmath.workdps(300):
        e = mpmath.mpf(exact)
        errs = [abs(hurwitz_large_genus_prediction(100, 6, n) / e - 1) for n in (1, 2, 3, 4)]
    assert all(a > b for a, b in zip(errs, errs[1:]))


def test_conifold_free_energy_matches_polylog():
    for g in (2, 3, 5):
        for t in (1, 2.5):
            exact = mpmath.mpf(f_cs(g).numerator) / f_cs(g).denominator * mpmath.polylog(3 - 2 * g, mpmath.exp(-t))
            assert mpmath.almosteq(conifold_free_energy(g, t), exact, rel_eps=mpmath.mpf(10) ** -50)
    assert conifold_gw(2, 3) == f_cs(2) * 3


def test_bundled_checksums():
    for name, (want, got) in data_checksums().items():
        assert want == got, name


def test_table_round_trip(tmp_path):
    gv = load_table(DATA + "local_p2_gv.tsv")
    path = tmp_path / "t.tsv"
    write_table(gv, path)
    again = load_table(path)
    assert dump_table(again) == dump_table(gv)
    gw = GwTable("conifold", {(2, d): conifold_gw(2, d) for d in range(1, 4)})
    write_table(gw, path)
    assert load_table(path).entries == gw.entries


@pytest.mark.parametrize(
    "body",
    [
        "# geometry: x\n# kind: gv\n0\t1\n",
        "# geometry: x\n# kind: gv\n0\t1\t1/2\n",
        "# geometry: x\n# kind: gv\n0\t1\t1\n0\t1\t2\n",
        "# kind: gv\n0\t1\t1\n",
        "# geometry: x\n# kind: gv\n0\t0\t1\n",
        "# geometry: x\n# kind: zz\n0\t1\t1\n",
    ],
)
def test_malformed_tables(tmp_path, body):
    path = tmp_path / "bad.tsv"
    path.write_text(body)
    with pytest.raises(TableParseError):
        load_table(path)
