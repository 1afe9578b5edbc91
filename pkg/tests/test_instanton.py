from fractions import Fraction as F

import mpmath
import pytest

import golden
from floquet_forge.instanton import (
    Partition, decoupling_check, enumerate_partition_pairs, f_pure_nu, f_star_nu_n, in_nn1,
    matone_u, nn1_to_n, partitions, prepotential, singularity_series, u1_shift,
)
from floquet_forge.ratfunc import sym
from floquet_forge.spectra import lame_B_electric

a, m, eps1, nu, n, nn1 = (sym(s) for s in ("a", "m", "eps1", "nu", "n", "nn1"))

PARTITION_COUNTS = [1, 1, 2, 3, 5, 7, 11, 15, 22]


@pytest.mark.parametrize("k", range(9))
def test_partition_counts(k):
    assert len(partitions(k)) == PARTITION_COUNTS[k]


def test_pairs_per_level():
    assert len(enumerate_partition_pairs(3)) == sum(
        PARTITION_COUNTS[k] * PARTITION_COUNTS[3 - k] for k in range(4))


def test_partition_geometry():
    y = Partition((3, 1))
    assert y.transpose() == Partition((2, 1, 1))
    assert y.transpose().transpose() == y
    assert y.arm(1, 1) == 2 and y.leg(1, 1) == 1
    with pytest.raises(ValueError):
        Partition((1, 2))


def test_one_instanton_amplitude():
    a12 = 2 * a
    printed = 2 * m * (m - eps1) * (m * (m - eps1) - a12 ** 2 + eps1 ** 2) / (a12 ** 2 - eps1 ** 2)
    assert prepotential("star", 1)[0] == printed


def test_one_instanton_in_quasimomentum():
    assert f_star_nu_n(1)[0] == 2 * nn1 / (nu ** 2 - 1) * (nn1 - (nu ** 2 - 1))


def test_adjoint_mass_enters_through_n_times_n_minus_one():
    for f in f_star_nu_n(3):
        assert "n" not in f.symbols()
        # and the n-form is invariant under n -> 1 - n
        g = nn1_to_n(f)
        assert g.subs({"n": 1 - n}) == g


def test_in_nn1_rejects_asymmetric_input():
    with pytest.raises(ValueError):
        in_nn1(n ** 3)


def test_pure_prepotential_gives_mathieu_coefficients():
    # lambda = nu^2 + sum_l l F_l (h/4)^(2l) ... read off through the Matone relation
    F1, F2 = f_pure_nu(2)
    assert F1 == 2 / (nu ** 2 - 1)
    assert F2 == (5 * nu ** 2 + 7) / ((nu ** 2 - 1) ** 3 * (nu ** 2 - 4))


def test_matone_relation():
    assert matone_u([sym("a"), sym("m")]) == [sym("a") / 2, sym("m")]


def test_mass_decoupling_of_prepotential():
    assert decoupling_check(3) == [True, True, True]


def test_b_series_printed_through_q2():
    assert lame_B_electric(2).series == golden.lame_b_printed()


def test_b_series_constant_band():
    B = lame_B_electric(0).series
    assert B.coefficient(0) == -nu ** 2 + nn1 / 3


def test_u1_difference():
    s = u1_shift(3, "nu_n")
    assert s.coefficient(1) == 2 * nn1 and s.coefficient(2) == 6 * nn1


def test_singularity_loci_against_theta_numerics():
    # u/m^2 = e_i/8 - (1 - 2 E2)/24, evaluated with mpmath theta functions
    q = mpmath.mpf("0.004")
    qh = mpmath.sqrt(q)
    t2, t3 = mpmath.jtheta(2, 0, qh) ** 4, mpmath.jtheta(3, 0, qh) ** 4
    e1, e2, e3 = (2 * t3 - t2) / 3, -(t3 + t2) / 3, (2 * t2 - t3) / 3
    E2 = 1 - 24 * mpmath.nsum(lambda k: k * q ** k / (1 - q ** k), [1, mpmath.inf])
    shift = (1 - 2 * E2) / 24
    series = singularity_series(5)
    for s, e in zip(series, (e1, e2, e3)):
        assert abs(s.evaluate(float(q)) - float(e / 8 - shift)) < 1e-12


def test_singularity_loci_leading_terms():
    el, mag, dy = singularity_series(5)
    for e in (0, 2, 4):
        assert el.coefficient(e) == golden.LOCUS_ELECTRIC.coefficient(e)
    assert el.coefficient(1) == 0 and el.coefficient(3) == 0
    assert mag.truncate(F(5, 2)) == golden.LOCUS_MAGNETIC
    assert dy.truncate(F(5, 2)) == golden.LOCUS_DYONIC


def test_electric_locus_fifth_order_vanishes():
    # the electric locus is even in q up to q^5; the q^5 coefficient is zero
    el, _, _ = singularity_series(6)
    assert el.coefficient(5) == 0
    assert el.coefficient(6) != 0
