"""Theta constants, e-roots, modulus/nome conversion, E2 and complete
elliptic integrals.

Nome convention: theta3 = 1 + 2 sum q^(n^2/2), so the Jacobi modulus
starts as k^2 = 16 q^(1/2) + ...  Every series here is in the variable
``q`` and "through order N" means all exponents <= N are exact.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .errors import DomainError
from .ratfunc import RatFunc
from .series import PuiseuxSeries, series_arith, series_compose, series_pow, series_reverse

Q = "q"
_STEP = Fraction(1, 8)


def _through(order) -> Fraction:
    """Exclusive precision that keeps every exponent <= order on the 1/8 lattice."""
    return Fraction(order) + _STEP


@dataclass(frozen=True)
class ThetaTriple:
    theta2: PuiseuxSeries
    theta3: PuiseuxSeries
    theta4: PuiseuxSeries


@dataclass(frozen=True)
class ERoots:
    e1: PuiseuxSeries
    e2: PuiseuxSeries
    e3: PuiseuxSeries


@lru_cache(maxsize=None)
def theta_constants(order) -> ThetaTriple:
    if order < 0:
        raise ValueError("order must be nonnegative")
    prec = _through(order)
    t3, t4 = {0: 1}, {0: 1}
    n = 1
    while Fraction(n * n, 2) < prec:
        e = Fraction(n * n, 2)
        t3[e] = 2
        t4[e] = 2 * (-1) ** n
        n += 1
    t2 = {}
    n = 0
    while Fraction(1, 8) + Fraction(n * (n + 1), 2) < prec:
        t2[Fraction(1, 8) + Fraction(n * (n + 1), 2)] = 2
        n += 1
    return ThetaTriple(PuiseuxSeries(Q, t2, prec), PuiseuxSeries(Q, t3, prec), PuiseuxSeries(Q, t4, prec))


def _fourth(s: PuiseuxSeries) -> PuiseuxSeries:
    sq = s * s
    return sq * sq


@lru_cache(maxsize=None)
def theta_fourth_powers(order):
    """(theta2^4, theta3^4, theta4^4), each exact through q^order."""
    th = theta_constants(order)
    return tuple(_fourth(t).truncate(_through(order)) for t in (th.theta2, th.theta3, th.theta4))


@lru_cache(maxsize=None)
def e_roots(order) -> ERoots:
    t2, t3, _ = theta_fourth_powers(order)
    e1 = t3 * Fraction(2, 3) - t2 * Fraction(1, 3)
    e2 = -(t3 + t2) * Fraction(1, 3)
    e3 = -t3 * Fraction(1, 3) + t2 * Fraction(2, 3)
    return ERoots(e1, e2, e3)


@lru_cache(maxsize=None)
def k2_of_q(order) -> PuiseuxSeries:
    """k^2 = theta2^4 / theta3^4 through q^order."""
    t2, t3, _ = theta_fourth_powers(order)
    return series_arith(t2, t3, "/").truncate(_through(order))


@lru_cache(maxsize=None)
def k_product(order) -> PuiseuxSeries:
    """k = 4 q^(1/4) prod ((1+q^n)/(1+q^(n-1/2)))^4, exact through q^order."""
    prec = _through(order)
    rel = prec - Fraction(1, 4)
    acc = PuiseuxSeries(Q, {0: 1}, rel)
    n = 1
    while Fraction(n) - Fraction(1, 2) < rel:
        num = PuiseuxSeries(Q, {0: 1, n: 1})
        den = PuiseuxSeries(Q, {0: 1, Fraction(2 * n - 1, 2): 1})
        f = series_pow(den.truncate(rel), -1)
        acc = acc * series_pow(num.truncate(rel) * f, 4)
        n += 1
    return acc.shift(Fraction(1, 4)) * 4


@lru_cache(maxsize=None)
def kprime_product(order) -> PuiseuxSeries:
    """k' = prod ((1-q^(n-1/2))/(1+q^(n-1/2)))^4."""
    prec = _through(order)
    acc = PuiseuxSeries(Q, {0: 1}, prec)
    n = 1
    while Fraction(2 * n - 1, 2) < prec:
        e = Fraction(2 * n - 1, 2)
        ratio = series_arith(PuiseuxSeries(Q, {0: 1, e: -1}, prec), PuiseuxSeries(Q, {0: 1, e: 1}, prec), "/")
        acc = acc * series_pow(ratio, 4)
        n += 1
    return acc


def modulus_nome(direction: str, order) -> PuiseuxSeries:
    """``k2_of_q``: k^2 through q^order.  ``q_of_k2``: q^(1/2) as a series in
    k^2 through (k^2)^order, obtained by reversion."""
    if direction == "k2_of_q":
        return k2_of_q(order)
    if direction == "q_of_k2":
        return _q_half_of_k2(int(order))
    raise ValueError(f"unknown direction {direction!r}")


@lru_cache(maxsize=None)
def _q_half_of_k2(order: int) -> PuiseuxSeries:
    # k^2 as a series in s = q^(1/2), exact through s^order
    fwd = k2_of_q(Fraction(order, 2)).rescale(2, var="sqrtq").truncate(order + 1)
    return series_reverse(fwd, new_var="k2", prec=order + 1)


def q_half_variable(series_in_q: PuiseuxSeries) -> PuiseuxSeries:
    """Re-express a series in q with half-integer exponents in s = q^(1/2)."""
    return series_in_q.rescale(2, var="sqrtq")


@lru_cache(maxsize=None)
def eisenstein_e2(order: int, form: str = "divisor") -> PuiseuxSeries:
    """E2(q) through q^order.

    ``divisor`` sums n q^(nm) over n, m >= 1; ``lambert`` expands the
    q^n/(1-q^n)^2 representation with exact series division.
    """
    prec = Fraction(order) + 1
    if form == "divisor":
        coeffs = {0: 1}
        for n in range(1, order + 1):
            for m in range(1, order // n + 1):
                coeffs[n * m] = coeffs.get(n * m, 0) - 24 * n
        return PuiseuxSeries(Q, coeffs, prec)
    if form == "lambert":
        acc = PuiseuxSeries(Q, {0: 1}, prec)
        for n in range(1, order + 1):
            den = PuiseuxSeries(Q, {0: 1, n: -1}, prec)
            acc = acc - series_arith(PuiseuxSeries(Q, {n: 24}, prec), den * den, "/")
        return acc
    raise ValueError(f"unknown form {form!r}")


def c0_series(order: int) -> PuiseuxSeries:
    """c0 = E2/12."""
    return eisenstein_e2(order) * Fraction(1, 12)


def mirror_q(series: PuiseuxSeries) -> PuiseuxSeries:
    """Formal map q^(1/2) -> -q^(1/2) (defined on the half-integer lattice)."""
    terms = {}
    for e, c in series.terms.items():
        if (2 * e).denominator != 1:
            raise ValueError(f"exponent {e} is not half-integral; the mirror map is undefined")
        terms[e] = -c if (2 * e).numerator % 2 else c
    return PuiseuxSeries(series.var, terms, series.prec)


def substitute_q_power(series: PuiseuxSeries, power: int) -> PuiseuxSeries:
    """Compose a series in q with q -> q^power."""
    inner = PuiseuxSeries(series.var, {power: 1})
    return series_compose(series, inner)


# ---------------------------------------------------------------------------
# complete elliptic integrals

def _hyper_coeffs(a: Fraction, order: int):
    """((a)_n (1/2)_n / (n!)^2) for the 2F1(a, 1/2; 1; x) series."""
    out, c = [], Fraction(1)
    for n in range(order + 1):
        out.append(c)
        c = c * (a + n) * (Fraction(1, 2) + n) / ((n + 1) ** 2)
    return out


def elliptic_KE(mode: str, argument):
    """Complete elliptic integrals K and E.

    ``series``: ``argument`` is the order in k^2; returns (K/(pi/2), E/(pi/2))
    as exact series in ``k2`` (the common factor pi/2 is left out because
    pi is not in the coefficient field).
    ``numeric``: ``argument`` is k^2 in [0, 1); returns floats (K, E).
    """
    if mode == "series":
        order = int(argument)
        ks = PuiseuxSeries.from_coeffs("k2", _hyper_coeffs(Fraction(1, 2), order), prec=order + 1)
        es = PuiseuxSeries.from_coeffs("k2", _hyper_coeffs(Fraction(-1, 2), order), prec=order + 1)
        return ks, es
    if mode == "numeric":
        return elliptic_KE_numeric(float(argument))
    raise ValueError(f"unknown mode {mode!r}")


def elliptic_KE_numeric(m: float, tol: float = 1e-14, max_iter: int = 64):
    """K(m), E(m) for parameter m = k^2 by the arithmetic-geometric mean."""
    if not (0.0 <= m < 1.0):
        raise DomainError(f"k^2 = {m} outside [0, 1)")
    a, b = 1.0, math.sqrt(1.0 - m)
    c = math.sqrt(m)
    acc = 0.5 * c * c
    power = 0.5
    for _ in range(max_iter):
        if abs(a - b) <= tol * a:
            break
        a, b, c = 0.5 * (a + b), math.sqrt(a * b), 0.5 * (a - b)
        power *= 2.0
        acc += power * c * c
    else:
        raise DomainError("AGM did not converge")
    K = math.pi / (2.0 * a)
    return K, K * (1.0 - acc)


def e_over_k_series(order: int) -> PuiseuxSeries:
    """E/K as an exact series in k2."""
    ks, es = elliptic_KE("series", order)
    return series_arith(es, ks, "/")


__all__ = [
    "ThetaTriple", "ERoots", "theta_constants", "theta_fourth_powers", "e_roots",
    "k2_of_q", "k_product", "kprime_product", "modulus_nome", "q_half_variable",
    "eisenstein_e2", "c0_series", "mirror_q", "substitute_q_power", "elliptic_KE",
    "elliptic_KE_numeric", "e_over_k_series",
]
