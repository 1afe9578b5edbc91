from fractions import Fraction as F

import mpmath
import pytest

import golden
from floquet_forge.ratfunc import sym
from floquet_forge.wkb import (
    chart_shift, inverse_mirror_operator, mathieu_limit, minimal_operator, mirror_contour,
    mirror_operator, p0_contour_series, reduce_order, structure_check, wkb_recursion,
)
from floquet_forge.wkb.operators import strip_total_derivatives


@pytest.mark.parametrize("two_l, chart, expected", [
    (2, "omega", golden.D2),
    (4, "omega", golden.D4),
    (2, "omega_tilde", golden.D2_TILDE),
])
def test_printed_operators(two_l, chart, expected):
    assert minimal_operator(two_l, chart).as_dict() == expected


@pytest.mark.parametrize("two_l", [2, 4, 6])
def test_mirror_maps_direct_operators(two_l):
    assert mirror_operator(minimal_operator(two_l, "omega")) == minimal_operator(two_l, "omega_tilde")


@pytest.mark.parametrize("two_l", [2, 4])
def test_inverse_mirror_round_trip(two_l):
    D = minimal_operator(two_l, "omega")
    assert inverse_mirror_operator(mirror_operator(D)) == D


@pytest.mark.parametrize("odd", [1, 3, 5, 7])
def test_odd_orders_are_total_derivatives(odd):
    r = wkb_recursion(odd)[odd]
    reduced, cert = strip_total_derivatives(r, odd)
    assert reduced.is_zero()
    assert cert.verify(r, reduced)
    assert minimal_operator(odd).as_dict() == {}


@pytest.mark.parametrize("two_l, chart", [(2, "omega"), (4, "omega"), (6, "omega"), (4, "omega_tilde")])
def test_even_reduction_certificates(two_l, chart):
    r = wkb_recursion(two_l, chart)[two_l]
    reduced, cert = reduce_order(two_l, chart)
    assert cert.verify(r, reduced)


@pytest.mark.parametrize("order", range(1, 9))
def test_recursion_structure(order):
    assert structure_check(order)
    assert structure_check(order, "omega_tilde")


def test_mathieu_limit_agrees_between_charts():
    for two_l in (2, 4):
        assert mathieu_limit(minimal_operator(two_l, "omega")) == \
            mathieu_limit(minimal_operator(two_l, "omega_tilde"))


def test_chart_shift_changes_chart_only():
    D = chart_shift(minimal_operator(2))
    assert D.chart == "omega_tilde"
    assert D.coefficient(0) == golden.D2[0]


# -- contour series ----------------------------------------------------------

def test_electric_contour_printed():
    s = p0_contour_series("electric", 3).series
    assert s.terms == golden.P0_ELECTRIC


def test_magnetic_contour_printed():
    cs = p0_contour_series("magnetic", 3)
    assert cs.prefactor == "pi"
    assert {e: c for e, c in cs.series.terms.items()} == golden.P0_MAGNETIC


def test_dyonic_contour_printed():
    cs = p0_contour_series("dyonic", 3)
    assert cs.series.terms == golden.P0_DYONIC


@pytest.mark.parametrize("order", [3, 6])
def test_mirror_contour_is_minus_dyonic(order):
    image = mirror_contour(p0_contour_series("magnetic", order)).series
    assert image == -p0_contour_series("dyonic", order).series


def test_electric_contour_against_quadrature():
    # oint over one period 2K of sqrt(omega + sn^2), in the amplitude variable
    w, m = mpmath.mpf(6), mpmath.mpf("0.3")
    direct = mpmath.quad(lambda p: mpmath.sqrt(w + mpmath.sin(p) ** 2) / mpmath.sqrt(1 - m * mpmath.sin(p) ** 2),
                         [0, mpmath.pi])
    s = p0_contour_series("electric", 14).series
    vals = {"K": float(mpmath.ellipk(m)), "E": float(mpmath.ellipe(m)), "k2": float(m)}
    assert abs(s.evaluate(1 / float(w), vals) - float(direct)) < 1e-10
