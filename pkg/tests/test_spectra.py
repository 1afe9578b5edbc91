from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

import golden
from floquet_forge.errors import AmbiguousRegion
from floquet_forge.instanton import nn1_to_n
from floquet_forge.ratfunc import I, sym
from floquet_forge.series import PuiseuxSeries, expand_ratfunc
from floquet_forge.spectra import (
    REGION_ALIASES, canonical_region, convert_A_B, decoupling_limit, dyonic_from_magnetic,
    lame_A_expansion, lame_B_electric, langmann_compare, large_nu_truncation, mathieu_dyonic_map,
    mathieu_expansion, region_advise, route_agreement,
)

nu, h, nn1, mu, k2, n = (sym(s) for s in ("nu", "h", "nn1", "mu", "k2", "n"))


# -- Mathieu ----------------------------------------------------------------

def test_mathieu_electric_printed():
    s = mathieu_expansion("electric", 4).series
    assert s.terms == golden.MATHIEU_ELECTRIC
    assert s.prec == 6


def test_mathieu_electric_poles_at_band_edges():
    s = mathieu_expansion("electric", 8).series
    for c in s.terms.values():
        den = c.denom()
        for j in range(1, 5):
            while (den / (nu ** 2 - j * j)).is_polynomial():
                den = den / (nu ** 2 - j * j)
        assert den.is_constant()


@pytest.mark.parametrize("region, expected", [("magnetic", golden.MATHIEU_MAGNETIC),
                                              ("dyonic", golden.MATHIEU_DYONIC)])
def test_mathieu_small_region_printed(region, expected):
    s = mathieu_expansion(region, 1).series
    assert s.terms == expected


def test_mathieu_regions_exchanged_by_mirror():
    mag = mathieu_expansion("magnetic", 3).series
    dy = mathieu_expansion("dyonic", 3).series
    assert mathieu_dyonic_map(mag) == dy
    assert mathieu_dyonic_map(mathieu_dyonic_map(mag)) == mag


def test_region_aliases():
    for alias, region in REGION_ALIASES.items():
        assert canonical_region(alias) == region
    with pytest.raises(ValueError):
        canonical_region("north")


# -- Lamé -------------------------------------------------------------------

def test_lame_electric_A_printed_bands():
    s = lame_A_expansion("electric", 5).series
    assert s.coefficient(-2) == -1  # the -mu^2 term
    for band, expected in golden.LAME_A_ELECTRIC.items():
        assert s.coefficient(band) == expected


def test_lame_electric_anchors():
    s = lame_A_expansion("electric", 5).series
    c0 = s.coefficient(0).poly_coeffs("k2")
    assert c0[4] == -F(41, 2048) * nn1 and c0[5] == -F(59, 4096) * nn1


def test_lame_electric_routes_agree_beyond_print():
    r = route_agreement("electric", 6)
    assert r["agree"], r["mismatched_exponents"]
    band0 = r["wkb"].series.coefficient(0).poly_coeffs("k2")
    assert band0[6] == -F(727, 65536) * nn1


def test_lame_magnetic_printed():
    s = lame_A_expansion("magnetic", 2).series
    assert s.terms == golden.LAME_A_MAGNETIC


def test_lame_dyonic_printed_and_transform():
    direct = lame_A_expansion("dyonic", 2)
    assert direct.series.truncate(2).terms == golden.LAME_A_DYONIC
    assert dyonic_from_magnetic(lame_A_expansion("magnetic", 2)).series == direct.series


def test_dyonic_routes_agree_at_higher_order():
    assert route_agreement("dyonic", 4)["agree"]


def test_magnetic_has_single_route():
    with pytest.raises(ValueError):
        lame_A_expansion("magnetic", 2, route="convert")


def test_conversion_round_trip():
    B = lame_B_electric(2)
    A = convert_A_B(B)
    assert A.form == "A" and A.route == "convert"
    B2 = convert_A_B(A)
    assert B2.series == large_nu_truncation(B.series, 2).truncate(B2.series.prec)


def test_b_decoupling_reproduces_mathieu():
    assert decoupling_limit(lame_B_electric(2)).series == mathieu_expansion("electric", 4).series


@pytest.mark.parametrize("region", ["magnetic", "dyonic"])
def test_small_region_decoupling(region):
    assert decoupling_limit(lame_A_expansion(region, 1)).series == mathieu_expansion(region, 1).series


def test_electric_A_decoupling_matches_large_nu_mathieu():
    lim = decoupling_limit(lame_A_expansion("electric", 5)).series
    ref = mathieu_expansion("electric", 4).series
    # compare each h-coefficient at large nu through nu^-4
    for e in (0, 1, 2):
        got = lim.coefficient(e)
        want = ref.coefficient(e)
        got_s = expand_ratfunc(got.subs({"nu": 1 / sym("X")}), "X", 5)
        want_s = expand_ratfunc(want.subs({"nu": 1 / sym("X")}), "X", 5)
        assert got_s == want_s


def test_langmann_regrouping():
    rep = langmann_compare(2)
    assert rep.B_langmann == golden.lame_b_regrouped()
    assert rep.u1_relation


# -- n -> 1 - n ---------------------------------------------------------------

def _invariant(series: PuiseuxSeries) -> bool:
    for c in series.terms.values():
        g = nn1_to_n(c)
        if g.subs({"n": 1 - n}) != g:
            return False
    return True


@settings(max_examples=8, deadline=None)
@given(st.sampled_from([("B", "electric"), ("A", "electric"), ("A", "magnetic"), ("A", "dyonic")]),
       st.integers(min_value=1, max_value=3))
def test_n_reflection_invariance(kind, order):
    form, region = kind
    if form == "B":
        s = lame_B_electric(order).series
    else:
        s = lame_A_expansion(region, order if region != "electric" else 2 * order).series
    assert _invariant(s)


def test_magnetic_series_n_enters_through_kappa_only():
    s = lame_A_expansion("magnetic", 3).series
    assert all("nn1" not in c.symbols() for c in s.terms.values())


# -- region advice ------------------------------------------------------------

def test_region_advice_examples():
    assert region_advise(nu=10, h=1).region == "electric"
    adv = region_advise(nu=1, h=100)
    assert {adv.region, *adv.alternatives} == {"magnetic", "dyonic"}
    assert region_advise(nu=5, n=2, k=0.1).region == "electric"


def test_region_advice_ambiguous():
    with pytest.raises(AmbiguousRegion):
        region_advise(nu=2, h=2)


def test_expansion_json_shape():
    d = mathieu_expansion("electric", 2).to_dict()
    assert set(d) == {"equation", "region", "form", "series", "validity", "route"}
    d = lame_A_expansion("electric", 3).to_dict()
    assert d["inner_truncation"] == {"variable": "k2", "order": "4"}
