from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from floquet_forge.errors import (
    AlphabetError, DivergentComposition, DivisionByZeroSeries, LatticeOverflow, NotInvertible,
    VariableMismatch,
)
from floquet_forge.ratfunc import I, RatFunc, sym
from floquet_forge.series import PuiseuxSeries, series_compose, series_pow, series_reverse

nu, h = sym("nu"), sym("h")


# -- RatFunc ----------------------------------------------------------------

def test_ratfunc_normalizes_and_cancels():
    r = (nu ** 2 - 1) / (nu - 1)
    assert r == nu + 1
    assert r.is_polynomial()


def test_imaginary_unit_squares_to_minus_one():
    assert I * I == -1
    assert (1 + I) * (1 - I) == 2
    assert 1 / I == -I


def test_ratfunc_substitution_is_simultaneous():
    r = nu + 2 * h
    assert r.subs({"nu": h, "h": nu}) == h + 2 * nu


def test_unknown_symbol_is_rejected():
    with pytest.raises(AlphabetError):
        sym("zeta")


def test_ratfunc_poly_coeffs():
    r = 3 * nu ** 2 * h + nu / 2 - 7
    assert r.poly_coeffs("nu") == {2: 3 * h, 1: RatFunc(F(1, 2)), 0: RatFunc(-7)}


def test_ratfunc_evaluate():
    r = (nu ** 2 + 1) / (2 * h)
    assert r.evaluate({"nu": 3, "h": 5}) == pytest.approx(1.0)


# -- series basics ----------------------------------------------------------

def test_series_truncation_is_exclusive():
    s = PuiseuxSeries("q", {0: 1, 1: 2, 2: 3}, 2)
    assert s.terms == {0: 1, 1: 2}
    assert s.prec == 2


def test_lattice_is_enforced():
    with pytest.raises(LatticeOverflow):
        PuiseuxSeries("q", {F(1, 3): 1})


def test_mixed_variables_raise():
    with pytest.raises(VariableMismatch):
        PuiseuxSeries("q", {0: 1}) + PuiseuxSeries("h", {0: 1})


def test_geometric_inverse():
    s = PuiseuxSeries("x", {0: 1, 1: -1}, 6)
    inv = 1 / s
    assert inv == PuiseuxSeries("x", {i: 1 for i in range(6)}, 6)


def test_inverse_of_vanishing_series():
    with pytest.raises(DivisionByZeroSeries):
        1 / PuiseuxSeries("x", {}, 3)


def test_square_root_of_one_plus_x():
    s = series_pow(PuiseuxSeries("x", {0: 1, 1: 1}, 5), F(1, 2))
    expected = {0: 1, 1: F(1, 2), 2: F(-1, 8), 3: F(1, 16), 4: F(-5, 128)}
    assert s == PuiseuxSeries("x", expected, 5)


def test_puiseux_power_keeps_lattice():
    s = series_pow(PuiseuxSeries("q", {F(1, 2): 16, 1: -128}, F(3, 2)), F(1, 2))
    assert s.valuation == F(1, 4)
    assert s.coefficient(F(1, 4)) == 4


def test_composition_requires_positive_valuation():
    with pytest.raises(DivergentComposition):
        series_compose(PuiseuxSeries("y", {-1: 1}, 2), PuiseuxSeries("x", {0: 1}, 3))


def test_reverse_of_sine_series():
    # x - x^3/6 + x^5/120 reversed is arcsin: y + y^3/6 + 3 y^5/40
    s = PuiseuxSeries("x", {1: 1, 3: F(-1, 6), 5: F(1, 120)}, 7)
    r = series_reverse(s, "y")
    assert r.agrees_with(PuiseuxSeries("y", {1: 1, 3: F(1, 6), 5: F(3, 40)}), 7)


def test_reverse_rejects_constant_term():
    with pytest.raises(NotInvertible):
        series_reverse(PuiseuxSeries("x", {0: 1, 1: 1}, 3))


def test_text_and_json_are_deterministic():
    s = PuiseuxSeries("h", {2: 1 / (2 * (nu ** 2 - 1)), 0: nu ** 2}, 4)
    assert s.to_json() == PuiseuxSeries("h", {0: nu ** 2, 2: 1 / (2 * (nu ** 2 - 1))}, 4).to_json()
    assert s.to_text().startswith("(nu^2)")
    assert "O(h^(4))" in s.to_text()


# -- properties -------------------------------------------------------------

small = st.fractions(min_value=-5, max_value=5, max_denominator=6)


@st.composite
def series(draw, var="x", min_exp=0, max_len=5, step=F(1, 2), symbolic=True):
    n = draw(st.integers(min_value=1, max_value=max_len))
    coeffs = draw(st.lists(small, min_size=n, max_size=n))
    terms = {}
    for i, c in enumerate(coeffs):
        coef = RatFunc(c)
        if symbolic and draw(st.booleans()):
            coef = coef * nu
        terms[min_exp + i * step] = coef
    prec = min_exp + draw(st.integers(min_value=n, max_value=n + 3)) * step
    return PuiseuxSeries(var, terms, prec)


@settings(max_examples=40, deadline=None)
@given(series(), series(), series())
def test_ring_axioms(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a - a == PuiseuxSeries("x", {}, a.prec)


@settings(max_examples=30, deadline=None)
@given(series(symbolic=False), st.integers(min_value=-3, max_value=3), st.integers(min_value=-3, max_value=3))
def test_power_additivity(s, m, n):
    s = s + PuiseuxSeries("x", {0: 1})  # unit leading term
    if s.coefficient(0) == 0:
        return
    lhs = series_pow(s, m) * series_pow(s, n)
    rhs = series_pow(s, m + n)
    assert lhs.agrees_with(rhs, min(lhs.prec, rhs.prec))


@settings(max_examples=25, deadline=None)
@given(st.lists(small, min_size=1, max_size=5), small.filter(lambda x: x != 0))
def test_reverse_round_trip(tail, lead):
    s = PuiseuxSeries("x", {1: lead, **{i + 2: c for i, c in enumerate(tail)}}, len(tail) + 2)
    r = series_reverse(s, "y")
    back = series_compose(r, s)
    assert back.agrees_with(PuiseuxSeries("x", {1: 1}), back.prec)
    forward = series_compose(s.with_variable("y"), r.with_variable("x"))
    assert forward.agrees_with(PuiseuxSeries("x", {1: 1}), forward.prec)
