"""Printed reference expansions, transcribed term by term.

Each object is built from exact rationals so that comparisons are
rational-function identities, not floating point agreement.
"""

from fractions import Fraction as F

from floquet_forge.ratfunc import I, sym
from floquet_forge.series import PuiseuxSeries

nu, h, nn1, mu, k2, kp = (sym(s) for s in ("nu", "h", "nn1", "mu", "k2", "kp"))
omega, omegat, K, E = sym("omega"), sym("omegat"), sym("K"), sym("E")

# Mathieu, large quasimomentum, through h^4
MATHIEU_ELECTRIC = {
    0: nu ** 2,
    2: 1 / (2 * (nu ** 2 - 1)),
    4: (5 * nu ** 2 + 7) / (32 * (nu ** 2 - 1) ** 3 * (nu ** 2 - 4)),
}

# Mathieu near the top / bottom of the potential, in s = h^(-1/2)
MATHIEU_MAGNETIC = {-2: 2, -1: -4 * nu, 0: (4 * nu ** 2 - 1) / 8, 1: (4 * nu ** 3 - 3 * nu) / 64}
MATHIEU_DYONIC = {-2: -2, -1: 4 * nu, 0: -(4 * nu ** 2 + 1) / 8, 1: -(4 * nu ** 3 + 3 * nu) / 64}

# modulus as a series in the nome
K2_OF_Q = PuiseuxSeries("q", {F(1, 2): 16, 1: -128, F(3, 2): 704, 2: -3072}, F(5, 2))
E2_PRINTED = PuiseuxSeries("q", {0: 1, 1: -24, 2: -72, 3: -96, 4: -168, 5: -144}, 6)
C0_PRINTED = PuiseuxSeries("q", {0: F(1, 12), 1: -2, 2: -6, 3: -8, 4: -14}, 5)

# singularity loci u/m^2 (electric; magnetic and dyonic carry the sign pattern)
LOCUS_ELECTRIC = PuiseuxSeries("q", {0: F(1, 8), 2: -4, 4: -12, 5: 12}, 6)
LOCUS_MAGNETIC = PuiseuxSeries("q", {F(1, 2): -1, 1: -3, F(3, 2): -4, 2: -7}, F(5, 2))
LOCUS_DYONIC = PuiseuxSeries("q", {F(1, 2): 1, 1: -3, F(3, 2): 4, 2: -7}, F(5, 2))

# Lamé B, electric region, through q^2
LAME_B = {
    0: -nu ** 2 - nn1 / 3,  # plus the 2 E2 n(n-1)/3 part, added below
    1: -8 * nn1 / (nu ** 2 - 1) * (nn1 - (nu ** 2 - 1)),
    2: -8 * nn1 / ((nu ** 2 - 1) ** 3 * (nu ** 2 - 4)) * (
        nn1 ** 3 * (5 * nu ** 2 + 7) - 12 * nn1 ** 2 * (nu ** 2 - 1) ** 2
        + 6 * nn1 * (nu ** 2 - 1) ** 2 * (nu ** 2 - 2) - 3 * (nu ** 2 - 1) ** 3 * (nu ** 2 - 4)),
}
LAME_B_CONSTANT_BAND = PuiseuxSeries("q", {0: 1, 1: -24, 2: -72}, 3) * (nn1 * F(2, 3))


def lame_b_printed() -> PuiseuxSeries:
    return PuiseuxSeries("q", LAME_B, 3) + LAME_B_CONSTANT_BAND


# the regrouped form with n(n-1)/3 E2(q) as constant band
def lame_b_regrouped() -> PuiseuxSeries:
    rest = {
        0: -nu ** 2,
        1: -8 * nn1 ** 2 / (nu ** 2 - 1),
        2: -8 * nn1 ** 2 / ((nu ** 2 - 1) ** 3 * (nu ** 2 - 4)) * (
            nn1 ** 2 * (5 * nu ** 2 + 7) - 12 * nn1 * (nu ** 2 - 1) ** 2 + 6 * (nu ** 2 - 1) ** 2 * (nu ** 2 - 2)),
    }
    return PuiseuxSeries("q", rest, 3) + PuiseuxSeries("q", {0: 1, 1: -24, 2: -72}, 3) * (nn1 / 3)


# Lamé A, electric region: bands in 1/mu^2 with coefficients through k^10 (k2^5)
LAME_A_ELECTRIC = {
    0: -nn1 * (k2 / 2 + k2 ** 2 / 16 + k2 ** 3 / 32 + F(41, 2048) * k2 ** 4 + F(59, 4096) * k2 ** 5),
    2: -nn1 ** 2 * (k2 ** 2 / 32 - k2 ** 4 / 4096 - k2 ** 5 / 4096),
    4: -nn1 ** 2 * (k2 ** 2 / 32 - k2 ** 3 / 64 - (7 + 6 * nn1) / 4096 * k2 ** 4 - (7 + 6 * nn1) / 8192 * k2 ** 5),
}

# Lamé A, magnetic region, coefficients of kappa^(1-j)
LAME_A_MAGNETIC = {
    -1: -2 * I * mu,
    0: -(1 + k2) * (4 * mu ** 2 - 1) / 8,
    1: -I / 32 * ((1 + k2) ** 2 * (4 * mu ** 3 - 3 * mu) - 4 * k2 * (4 * mu ** 3 - 5 * mu)),
    2: (1 + k2) * (1 - k2) ** 2 * (80 * mu ** 4 - 136 * mu ** 2 + 9) / 1024,
}

# Lamé A, dyonic region, with k^2 = 1 - kp^2
_K2 = 1 - kp ** 2
LAME_A_DYONIC = {
    -2: -1,
    -1: 2 * I * mu,
    0: (1 - 2 * _K2) * (4 * mu ** 2 / kp ** 2 + 1) / 8,
    1: I / 32 * ((1 - 2 * _K2) ** 2 / kp * (4 * mu ** 3 / kp ** 3 + 3 * mu / kp)
                 + 4 * _K2 * kp * (4 * mu ** 3 / kp ** 3 + 5 * mu / kp)),
}

# p_0 contour integrals
P0_ELECTRIC = {  # exponent of 1/omega -> coefficient
    F(-1, 2): 2 * K,
    F(1, 2): (K - E) / k2,
    F(3, 2): -((2 + k2) * K - 2 * (1 + k2) * E) / (12 * k2 ** 2),
    F(5, 2): ((8 + 3 * k2 + 4 * k2 ** 2) * K - (8 + 7 * k2 + 8 * k2 ** 2) * E) / (120 * k2 ** 3),
}
P0_MAGNETIC = {1: I / 2, 2: -I * (1 + k2) / 16, 3: I * (3 * k2 ** 2 + 2 * k2 + 3) / 128}  # over pi
P0_DYONIC = {  # over pi
    1: -1 / (2 * kp),
    2: -(1 - 2 * _K2) / (16 * kp ** 3),
    3: -(8 * _K2 ** 2 - 8 * _K2 + 3) / (128 * kp ** 5),
}

# WKB operators, d/domega^j coefficients
D2 = {
    2: -(1 + 2 * omega + 2 * k2 * omega + 3 * k2 * omega ** 2) / 12,
    1: -(1 + k2 + 3 * k2 * omega) / 12,
    0: k2 / 16,
}
D4 = {
    4: F(2, 135) * (21 + (84 + 359 * k2) * omega + (84 + 1394 * k2 + 359 * k2 ** 2) * omega ** 2
                    + k2 * (1077 + 1352 * k2) * omega ** 3 + 1014 * k2 ** 2 * omega ** 4) / 64,
    3: F(4, 27) * ((18 + 73 * k2) + (36 + 341 * k2 + 146 * k2 ** 2) * omega
                   + k2 * (432 + 597 * k2) * omega ** 2 + 597 * k2 ** 2 * omega ** 3) / 64,
    2: F(1, 18) * ((60 + 191 * k2 + 225 * k2 ** 2) + k2 * (667 + 1162 * k2) * omega + 1743 * k2 ** 2 * omega ** 2) / 64,
    1: F(1, 18) * (k2 * (8 + 63 * k2) + 189 * k2 ** 2 * omega) / 64,
    0: -k2 ** 2 / 512,
}
D2_TILDE = {
    2: -(-1 + k2 + 2 * omegat - 4 * k2 * omegat + 3 * k2 * omegat ** 2) / 12,
    1: -(1 - 2 * k2 + 3 * k2 * omegat) / 12,
    0: k2 / 16,
}
