"""Leading-order contour integrals of sqrt(omega + sn^2) as formal series.

The elementary integrals obey three-term recurrences obtained by
differentiating sin^(m-1) cos Delta (resp. cos^(m-1) sin Delta); the
boundary terms vanish on every contour used here.

* electric, J_j = int_0^{pi/2} sin^(2j)/Delta:
      (2j+1) k^2 J_{j+1} = 2j (1+k^2) J_j - (2j-1) J_{j-1},  J_0 = K, J_1 = (K-E)/k^2
* magnetic, T_m = oint_beta sin^m/Delta (in units of pi):
      (m+1) k^2 T_{m+2} - m (1+k^2) T_m + (m-1) T_{m-2} = 0,  T_1 = 0, T_{-1} = i
* dyonic, C_m = oint_gamma cos^m/Delta (in units of pi):
      (m+1) k^2 C_{m+2} - m (2k^2-1) C_m - (m-1) k'^2 C_{m-2} = 0,  C_1 = 0, C_{-1} = -i/k'
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from ..ratfunc import I, RatFunc, sym
from ..series import PuiseuxSeries

HALF = Fraction(1, 2)

#: series-variable tags
ELECTRIC_VAR = "omega^-1"
MAGNETIC_VAR = "omega"
DYONIC_VAR = "omegat"


def binom_half(j: int) -> Fraction:
    """binomial(1/2, j)."""
    c = Fraction(1)
    for i in range(j):
        c = c * (HALF - i) / (i + 1)
    return c


@dataclass(frozen=True)
class ContourSeries:
    """The p_0 contour integral in one region.

    The true value is ``prefactor`` times ``series``, where ``prefactor`` is
    "1" (electric: coefficients carry K and E) or "pi" (magnetic, dyonic).
    """

    region: str
    series: PuiseuxSeries
    prefactor: str

    def to_dict(self) -> dict:
        return {"region": self.region, "prefactor": self.prefactor, "series": self.series.to_dict()}


@lru_cache(maxsize=None)
def electric_table(n: int) -> tuple[RatFunc, ...]:
    K, E, k2 = sym("K"), sym("E"), sym("k2")
    J = [K, (K - E) / k2]
    for j in range(1, n):
        J.append((J[j] * (2 * j) * (1 + k2) - J[j - 1] * (2 * j - 1)) / ((2 * j + 1) * k2))
    return tuple(J[: n + 1])


@lru_cache(maxsize=None)
def magnetic_table(n: int) -> tuple[RatFunc, ...]:
    """T_1, T_{-1}, T_{-3}, ..., T_{1-2n}."""
    k2 = sym("k2")
    T = {1: RatFunc(0), -1: I}
    m = -1
    while m - 2 >= 1 - 2 * n:
        # (m+1) k^2 T_{m+2} - m (1+k^2) T_m + (m-1) T_{m-2} = 0
        T[m - 2] = (T[m] * m * (1 + k2) - T[m + 2] * (m + 1) * k2) / (m - 1)
        m -= 2
    return tuple(T[1 - 2 * j] for j in range(n + 1))


@lru_cache(maxsize=None)
def dyonic_table(n: int) -> tuple[RatFunc, ...]:
    """C_1, C_{-1}, ..., C_{1-2n} with k^2 written as 1 - kp^2."""
    kp = sym("kp")
    k2 = 1 - kp ** 2
    C = {1: RatFunc(0), -1: -I / kp}
    m = -1
    while m - 2 >= 1 - 2 * n:
        C[m - 2] = (C[m + 2] * (m + 1) * k2 - C[m] * m * (2 * k2 - 1)) / ((m - 1) * kp ** 2)
        m -= 2
    return tuple(C[1 - 2 * j] for j in range(n + 1))


def p0_contour_series(region: str, order: int) -> ContourSeries:
    """oint sqrt(omega + sn^2) dX through ``order`` terms past the leading one.

    electric: 2 sqrt(omega) sum_j binom(1/2, j) omega^(-j) J_j, variable 1/omega
    magnetic: sum_j binom(1/2, j) omega^j T_{1-2j}, variable omega
    dyonic:   i sum_j binom(1/2, j) (-omegat)^j C_{1-2j}, variable omegat
    """
    if order < 1:
        raise ValueError("order must be >= 1")
    if region == "electric":
        J = electric_table(order)
        terms = {Fraction(-1, 2) + j: J[j] * binom_half(j) * 2 for j in range(order + 1)}
        return ContourSeries(region, PuiseuxSeries(ELECTRIC_VAR, terms, Fraction(1, 2) + order), "1")
    if region == "magnetic":
        T = magnetic_table(order)
        terms = {j: T[j] * binom_half(j) for j in range(order + 1)}
        return ContourSeries(region, PuiseuxSeries(MAGNETIC_VAR, terms, order + 1), "pi")
    if region == "dyonic":
        C = dyonic_table(order)
        terms = {j: C[j] * binom_half(j) * (-1) ** j * I for j in range(order + 1)}
        return ContourSeries(region, PuiseuxSeries(DYONIC_VAR, terms, order + 1), "pi")
    raise ValueError(f"unknown region {region!r}")


def mirror_contour(cs: ContourSeries) -> ContourSeries:
    """Image of (1/eps) * (magnetic integral) under k -> ik/k', omega -> -omegat,
    eps -> -i k' eps, expressed again as a plain integral (the 1/eps is
    divided back out).  In terms of the image modulus, k2 -> -(1-kp^2)/kp^2.
    The result should equal minus the dyonic integral.
    """
    if cs.region != "magnetic":
        raise ValueError("mirror_contour maps the magnetic series")
    kp = sym("kp")
    sub = {"k2": -(1 - kp ** 2) / kp ** 2}
    rescale = 1 / (-I * kp)
    terms = {e: c.subs(sub) * (-1) ** int(e) * rescale for e, c in cs.series.terms.items()}
    return ContourSeries("dyonic", PuiseuxSeries(DYONIC_VAR, terms, cs.series.prec), cs.prefactor)
