from fractions import Fraction
from math import factorial

import pytest

from ncchains import formulas
from ncchains.diagram import invariants, parse_type
from ncchains.group import build_group
from ncchains.nclattice import build_lattice
from ncchains.polynomial import M, PolynomialQ

IRREDUCIBLE = [
    "A1", "A2", "A3", "A4", "A5", "A6", "A8", "B2", "B3", "B4", "B5", "B7",
    "D4", "D5", "D6", "D8", "E6", "E7", "E8", "F4", "H3", "H4", "I2(5)", "I2(7)", "I2(12)",
]


@pytest.mark.parametrize("name,m,value", [("A2", 1, 5), ("H3", 1, 32), ("A2", 2, 12), ("A1", 5, 6), ("B2", 1, 6)])
def test_fuss_catalan_values(name, m, value):
    assert formulas.fuss_catalan(name, m) == value


def test_fuss_catalan_product():
    assert formulas.fuss_catalan("A2xB2", 2) == formulas.fuss_catalan("A2", 2) * formulas.fuss_catalan("B2", 2)


@pytest.mark.parametrize("name", IRREDUCIBLE)
def test_fuss_catalan_polynomial(name):
    t = parse_type(name)
    inv = invariants(t)
    p = formulas.fuss_catalan(t, M)
    assert p.degree == t.rank
    assert p.leading == Fraction(inv.h**t.rank, inv.order)
    assert factorial(t.rank) * p.leading == formulas.mc_closed(t)
    for m in range(5):
        assert p(m) == formulas.fuss_catalan(t, m)


@pytest.mark.parametrize("name,value", [
    ("H4", 1350), ("E6", 41472), ("E7", 1062882), ("E8", 37968750), ("D4", 162),
    ("A5", 1296), ("B4", 256), ("F4", 432), ("H3", 50), ("I2(9)", 9),
])
def test_mc_table_values(name, value):
    assert formulas.mc_closed(name) == formulas.mc_table(name) == value


@pytest.mark.parametrize("name", IRREDUCIBLE)
def test_mc_closed_matches_table(name):
    assert formulas.mc_closed(name) == formulas.mc_table(name)


def test_mc_closed_reducible_uses_each_coxeter_number():
    # n! prod h_s / |W| with h_s the Coxeter number of the factor containing s
    assert formulas.mc_closed("A1xA1") == 2
    assert formulas.mc_closed("A2xA1") == 3 * 3 * 2 * 6 // 12


@pytest.mark.parametrize("name,value", [("A2", 6), ("A3", 28), ("H3", 80)])
def test_edge_closed(name, value):
    assert formulas.edge_closed(name) == value


@pytest.mark.parametrize("name", IRREDUCIBLE)
def test_edge_closed_is_integral_multiple(name):
    t = parse_type(name)
    h = invariants(t).h
    assert Fraction(t.rank * h, h + 2) * formulas.nc_closed(t) == formulas.edge_closed(t)


@pytest.mark.parametrize("name,value", [("A2", 6), ("A3", 32), ("H3", 100)])
def test_sc_top_closed(name, value):
    assert formulas.sc_top_closed(name) == value == 2 * formulas.mc_closed(name)


@pytest.mark.parametrize("name,m,value", [("A2", 2, 12), ("I2(5)", 2, 20), ("A3", 1, 16)])
def test_m_mc_closed(name, m, value):
    assert formulas.m_mc_closed(name, m) == value


@pytest.mark.parametrize("name,m,value", [("A2", 2, 18), ("A1", 3, 3), ("A3", 1, 28)])
def test_m_edge_closed(name, m, value):
    assert formulas.m_edge_closed(name, m) == value


def test_obvious_formula_examples():
    assert formulas.obvious_formula("A3", 0) == 14
    assert formulas.obvious_formula("A3", 1) == 28
    assert formulas.obvious_formula("A3", 3) == 16
    assert formulas.obvious_formula("A3", 2) == 32


def test_obvious_formula_can_be_fractional():
    assert formulas.obvious_formula("D5", 2) == Fraction(5824, 3)


def test_fk_examples():
    assert formulas.fk_polynomial("A2", 1) == 3 * M + 2
    assert formulas.fk_polynomial("B3", 0) == 1
    assert formulas.fk_value("A2", 2, 1) == 5
    assert formulas.tw_from_fk("A2", 1) == 3
    assert formulas.tw_from_fk("A3", 3) == 16
    with pytest.raises(ValueError):
        formulas.fk_polynomial("A2", 3)


@pytest.mark.parametrize("name", ["A1", "A3", "B4", "D5", "E6", "E8", "F4", "H4", "I2(7)", "A2xB2"])
def test_fk_top_is_fuss_catalan(name):
    t = parse_type(name)
    assert formulas.fk_polynomial(t, t.rank) == formulas.fuss_catalan(t, M)
    for k in range(t.rank + 1):
        assert formulas.fk_polynomial(t, k).degree == (k if k else 0)


@pytest.mark.parametrize("name", ["A1xA1", "A2xA1", "A2xB2", "A1xH3"])
def test_reducible_fk_convolution_matches_brute_force(name):
    L = build_lattice(build_group(name))
    for k in range(L.rank + 1):
        assert formulas.tw_from_fk(name, k) == L.count_tw(k)


def test_max_reducible():
    assert formulas.max_reducible(1, 1, 1, 1) == 2
    assert formulas.max_reducible(3, 2, 16, 3) == 10 * 48


def test_polynomial_constant_comparison():
    assert formulas.fk_polynomial("A4", 0) == PolynomialQ.constant(1)
