import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from gwasym.geometries import load_table
from gwasym.invariants import (
    DataInconsistencyError,
    GvTable,
    GwTable,
    IncompleteDataError,
    abc_to_gw,
    arcsin_alpha,
    dirichlet_relations_check,
    genus_bound,
    gv_to_abc,
    gv_to_gw,
    gw_to_gv,
    sine_coeff,
    sine_coeff_series,
)
from gwasym.invariants import b_range

DATA = "src/gwasym/data/"


def random_gv(rng: random.Random, dmax: int = 12, gcap: int = 10, amp: int = 50) -> GvTable:
    ents = {}
    for d in range(1, dmax + 1):
        G = rng.randint(0, gcap)
        for r in range(G + 1):
            ents[(r, d)] = rng.randint(-amp, amp)
        ents[(G, d)] = ents[(G, d)] or 1
    return GvTable("random", ents, frozenset(range(1, dmax + 1)))


gv_tables = st.integers(0, 10**9).map(lambda s: random_gv(random.Random(s), dmax=6, gcap=4, amp=20))


def test_sine_coefficients_match_taylor_oracle():
    for g in range(0, 13):
        for h in range(0, g + 1):
            assert sine_coeff(h, g) == sine_coeff_series(h, g), (h, g)


def test_sine_coefficients_vanish_above_diagonal():
    assert sine_coeff(5, 3) == 0
    assert sine_coeff(1, 1) == 1 and sine_coeff(1, 4) == 0


def test_sine_and_arcsin_systems_are_inverse():
    n = 12
    for g in range(1, n + 1):
        for k in range(1, g + 1):
            s = sum(sine_coeff(h, g) * arcsin_alpha(h, k) for h in range(k, g + 1))
            assert s == (1 if g == k else 0), (g, k)


@given(gv_tables)
def test_gv_gw_round_trip(gv):
    gmax = max(gv.G(d) for d in gv.degrees)
    gw = gv_to_gw(gv, gmax, gv.dmax)
    back = gw_to_gv(gw)
    for d in gv.degrees:
        for r in range(gmax + 1):
            assert back.n(r, d) == gv.n(r, d)


@given(gv_tables)
def test_abc_reproduces_multicover(gv):
    abc = gv_to_abc(gv)
    assert abc.is_integral()
    gw = gv_to_gw(gv, 8, gv.dmax)
    for (g, d), v in gw.entries.items():
        assert abc_to_gw(abc, g, d) == v


@given(gv_tables)
def test_dirichlet_relations(gv):
    gw = gv_to_gw(gv, 6, gv.dmax)
    report = dirichlet_relations_check(gv, gw, 6, gv.dmax)
    assert report.ok, report.failure


def test_b_range_matches_geometric_bound():
    gv = load_table(DATA + "local_p2_gv.tsv")
    assert b_range(gv, 4) == gv.G(4) - 1


def test_degree_one_values():
    for n01, expected in ((3, Fraction(1, 80)), (-4, Fraction(-1, 60)), (2875, Fraction(575, 48))):
        gv = GvTable("x", {(0, 1): n01}, frozenset({1}))
        assert gv_to_gw(gv, 2, 1).N(2, 1) == expected


def test_sample_tables_degree_one():
    for name, n01 in (("local_p2", 3), ("abjm", -4), ("quintic", 2875)):
        gv = load_table(DATA + f"{name}_gv.tsv")
        assert gv.n(0, 1) == n01


def test_local_p2_abc_degree_four():
    gv = load_table(DATA + "local_p2_gv.tsv")
    abc = gv_to_abc(gv)
    assert [abc.a[d] for d in (1, 2, 3, 4)] == [3, -6, 27, -192]
    assert abc.b[(4, 1)] == 336 and abc.b[(4, 2)] == 120
    assert abc.c[3] == -30 and abc.c[4] == 468


def test_local_p2_genus_bound():
    G = genus_bound("local_p2")
    assert [G(d) for d in range(1, 6)] == [0, 0, 1, 3, 6]


def test_missing_degree_raises():
    gv = GvTable("x", {(0, 1): 1, (0, 3): 2}, frozenset({1, 3}))
    with pytest.raises(IncompleteDataError) as exc:
        gv.n(0, 2)
    assert exc.value.degree == 2


def test_non_integral_inversion_reports_location():
    gw = GwTable("x", {(0, 1): Fraction(1, 2)})
    with pytest.raises(DataInconsistencyError) as exc:
        gw_to_gv(gw)
    assert "d=1" in str(exc.value) or "1" in str(exc.value)


def test_gv_integrality_enforced():
    with pytest.raises((ValueError, TypeError)):
        GvTable("x", {(0, 1): Fraction(1, 2)}, frozenset({1}))
