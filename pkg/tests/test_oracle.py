import math
import time
import warnings

import mpmath
import pytest
from hypothesis import given, settings, strategies as st
from scipy.special import ellipj

from floquet_forge.errors import BranchAmbiguity, DomainError, RegionViolation, StiffnessFailure
from floquet_forge.modular import elliptic_KE_numeric
from floquet_forge.oracle import jacobi_sn_numeric, monodromy_floquet, verify_expansion


def test_sn_trivial_values():
    K, _ = elliptic_KE_numeric(0.49)
    assert jacobi_sn_numeric(0.0, 0.7) == 0.0
    assert jacobi_sn_numeric(K, 0.7) == pytest.approx(1.0, abs=1e-12)
    assert jacobi_sn_numeric(1.0, 0.0) == pytest.approx(math.sin(1.0), abs=1e-15)


@settings(max_examples=60, deadline=None)
@given(st.floats(min_value=-8, max_value=8), st.floats(min_value=0.0, max_value=0.99))
def test_sn_against_mpmath(x, k):
    ref = float(mpmath.ellipfun("sn", x, m=k * k))
    assert jacobi_sn_numeric(x, k) == pytest.approx(ref, abs=1e-11)
    assert jacobi_sn_numeric(x, k) == pytest.approx(ellipj(x, k * k)[0], abs=1e-11)


def test_sn_domain():
    with pytest.raises(DomainError):
        jacobi_sn_numeric(0.3, 1.0)


def test_free_mathieu_exponent():
    assert monodromy_floquet("mathieu", lam=6.25, h=0).exponent == pytest.approx(2.5, abs=1e-9)


def test_free_mathieu_band_edge():
    # at an integer exponent the trace sits at -2 and the arccos loses half the digits
    r = monodromy_floquet("mathieu", lam=25, h=0)
    assert r.exponent.real == pytest.approx(5, abs=1e-6)
    with pytest.raises(BranchAmbiguity):
        monodromy_floquet("mathieu", lam=25, h=0, edge_tol=1e-10)


@pytest.mark.parametrize("n", [0, 1])
def test_lame_without_potential(n):
    r = monodromy_floquet("lame", A=-2.3 ** 2, n=n, k=0.4)
    assert r.exponent == pytest.approx(2.3, abs=1e-9)
    assert r.wronskian_drift < 1e-9


def test_exponential_growth_is_rejected():
    with pytest.raises(StiffnessFailure):
        monodromy_floquet("mathieu", lam=-150.0, h=200.0)


def test_mathieu_electric_truncation():
    rep = verify_expansion("mathieu", "electric", {"nu": 5, "h": 1}, [0, 2, 4])
    assert rep.residuals[-1] < 1e-6
    assert rep.decreasing
    assert rep.wronskian_drift < 1e-9


def test_lame_electric_truncation():
    rep = verify_expansion("lame", "electric", {"mu": 6, "n": 2, "k": 0.15}, [0, 1, 2])
    assert rep.decreasing
    assert rep.wronskian_drift < 1e-9


def test_out_of_region_warns():
    with pytest.warns(RegionViolation):
        verify_expansion("mathieu", "electric", {"nu": 1.2, "h": 12}, [0])


def test_report_schema():
    d = verify_expansion("lame", "electric", {"mu": 5.5, "n": 2, "k": 0.1}, [0, 1]).to_dict()
    assert set(d) == {"equation", "region", "params", "orders", "residuals", "wronskian_drift"}


GRID_MATHIEU = [(4.5, 0.5), (5.5, 1.0), (7.3, 2.0), (10.5, 3.0)]
GRID_LAME = [(6.0, 2, 0.15), (8.0, 3, 0.2), (5.5, 2, 0.1)]


def test_oracle_grid_monotone_and_fast():
    t0 = time.perf_counter()
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", RegionViolation)
        for nu, h in GRID_MATHIEU:
            rep = verify_expansion("mathieu", "electric", {"nu": nu, "h": h}, [0, 2, 4])
            assert rep.decreasing and rep.wronskian_drift < 1e-9
        for mu, n, k in GRID_LAME:
            rep = verify_expansion("lame", "electric", {"mu": mu, "n": n, "k": k}, [0, 1, 2])
            assert rep.decreasing and rep.wronskian_drift < 1e-9
    assert time.perf_counter() - t0 < 300
