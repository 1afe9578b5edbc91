"""From operators and leading contour series to mu(omega) and A(mu).

The total phase is (1/eps) sum_l eps^(2l) D_2l oint p_0 with
oint p_0 = i sqrt(2) oint sqrt(omega + sn^2) and eps^2 = 2/kappa^2, so

    oint p = i kappa sum_l (2/kappa^2)^l D_2l I,      I = oint sqrt(omega + sn^2).

Each region divides by its own constant (2K, i pi, pi/k') and inverts.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from ..errors import NotInvertible
from ..modular import e_over_k_series
from ..ratfunc import I, ONE, ZERO, RatFunc, rsum, sym
from ..series import PuiseuxSeries, ratfunc_as_series, series_reverse
from .contour import ELECTRIC_VAR, p0_contour_series
from .operators import DiffOperator, mathieu_limit, minimal_operator

KAPPA_INV = "kappa^-1"
MU_INV = "mu^-1"
H_INV_HALF = "h^-1/2"

_falling_cache: dict = {}


def _falling(r: Fraction, j: int) -> Fraction:
    key = (r, j)
    if key not in _falling_cache:
        f = Fraction(1)
        for i in range(j):
            f *= r - i
        _falling_cache[key] = f
    return _falling_cache[key]


def apply_operator(D: DiffOperator, series: PuiseuxSeries, param: str, inverse: bool = False) -> PuiseuxSeries:
    """Apply D (coefficients polynomial in ``param``) to a series.

    With ``inverse`` the series variable is 1/param (large-param expansion),
    otherwise it is param itself.
    """
    pieces = []
    spread = []
    for j, c in D.coeffs:
        poly = c.poly_coeffs(param)
        pieces.append((j, poly))
        spread.extend(j - a for a in poly)
    out: dict[Fraction, list] = {}
    for e, coeff in series.terms.items():
        r = -e if inverse else e
        for j, poly in pieces:
            f = _falling(r, j)
            if f == 0:
                continue
            for a, b in poly.items():
                power = r - j + a
                key = -power if inverse else power
                out.setdefault(key, []).append(b * coeff * f)
    prec = series.prec
    if prec is not None and spread:
        prec = prec + min(spread) if inverse else prec - max(spread)
    terms = {e: rsum(v) for e, v in out.items()}
    if prec is not None:
        terms = {e: v for e, v in terms.items() if e < prec}
    return PuiseuxSeries(series.var, terms, prec)


# ---------------------------------------------------------------------------
# electric region

@dataclass(frozen=True)
class FloquetSeries:
    """mu organised by region.

    electric: mu = i sqrt(A) (1 + sum_j g_j A^(-j)), ``coefficients`` = (1, g_1, ...)
    magnetic/dyonic: mu = sum_m v^m f_m(x) with omega = x v, v = 1/kappa;
    ``coefficients`` = (f_0, f_1, ...) as polynomials in the symbol x (stored in "X").
    """

    region: str
    coefficients: tuple

    def as_series(self) -> PuiseuxSeries:
        if self.region == "electric":
            return PuiseuxSeries("A^-1", dict(enumerate(self.coefficients)), len(self.coefficients))
        return PuiseuxSeries(KAPPA_INV, dict(enumerate(self.coefficients)), len(self.coefficients))


@lru_cache(maxsize=None)
def _electric_g(n_terms: int) -> tuple[RatFunc, ...]:
    """g_0 = 1, g_1, ..., g_{n_terms-1} as RatFunc in (K, E, k2, nn1)."""
    base = p0_contour_series("electric", n_terms + 1).series
    K, k2, nn1 = sym("K"), sym("k2"), sym("nn1")
    kappa2 = nn1 * k2
    g = [[] for _ in range(n_terms)]
    for l in range(n_terms):
        D = minimal_operator(2 * l, "omega")
        image = apply_operator(D, base, "omega", inverse=True)
        for e, d in image.terms.items():
            j = e + Fraction(1, 2)
            if j.denominator != 1:
                raise NotInvertible(f"unexpected exponent {e}")
            j = int(j)
            if j < l:
                raise NotInvertible(f"D_{2*l} leaves a term at omega^{-e}; 1/n(n-1) would survive")
            if j < n_terms:
                g[j].append(d * 2 ** l * kappa2 ** (j - l))
    out = tuple(rsum(x) / (2 * K) for x in g)
    if out[0] != ONE:
        raise NotInvertible(f"leading electric coefficient is {out[0]}, expected 1")
    return out


def electric_floquet(n_terms: int) -> FloquetSeries:
    return FloquetSeries("electric", _electric_g(n_terms))


@lru_cache(maxsize=None)
def electric_bands(mu_bands: int) -> tuple[RatFunc, ...]:
    """rho_0, ..., rho_{mu_bands+1} with A = sum_i rho_i M^(1-i), M = -mu^2.

    Coefficients are RatFunc in (e = E/K, k2, nn1).
    """
    n = mu_bands + 2
    g = _electric_g(n)
    sub = {"E": sym("e") * sym("K")}
    g = [c.subs(sub) for c in g]
    G = PuiseuxSeries("x", dict(enumerate(g)), n)
    X = PuiseuxSeries("x", {1: 1}) / (G * G)
    x_of_X = series_reverse(X, new_var="X", prec=n + 1)
    R = x_of_X.shift(-1)  # x/X = 1 + r1 X + ...
    inv = PuiseuxSeries.constant("X", 1, None) / R
    return tuple(inv.coefficient(i) for i in range(n))


def electric_A_bands(mu_bands: int, k2_order: int) -> dict[int, RatFunc]:
    """A = sum over bands mu^(2-2i) * coefficient, coefficients polynomial in k2
    (exact through k2^k2_order) and nn1."""
    rho = electric_bands(mu_bands)
    eok = e_over_k_series(k2_order + 2)
    out = {}
    for i, r in enumerate(rho):
        s = ratfunc_as_series(r, "k2", k2_order + 1, {"e": eok})
        poly = rsum([c * sym("k2") ** int(e) for e, c in s.terms.items()])
        out[2 - 2 * i] = poly if i % 2 else -poly
    return out


# ---------------------------------------------------------------------------
# magnetic and dyonic regions: mu = sum_m v^m f_m(x), omega = x v

def _small_region_fs(region: str, n_terms: int, operators, base: PuiseuxSeries,
                     param: str, norm: RatFunc) -> tuple[RatFunc, ...]:
    """f_0..f_{n_terms-1}: mu = norm * kappa * sum_l (2/kappa^2)^l (D_2l S)(x v)."""
    x = sym("X")
    f = [[] for _ in range(n_terms)]
    for l, D in enumerate(operators):
        image = apply_operator(D, base, param) if l else base
        for r, c in image.terms.items():
            m = 2 * l - 1 + int(r)
            if m < 0:
                raise NotInvertible(f"{region}: negative power of 1/kappa from D_{2*l}")
            if m < n_terms:
                f[m].append(c * 2 ** l * x ** int(r) * norm)
    return tuple(rsum(t) for t in f)


def _solve_for_x(fs: tuple[RatFunc, ...], n_terms: int) -> PuiseuxSeries:
    """Solve sum_m v^m f_m(x) = mu for x as a series in v through v^(n_terms-1)."""
    x = sym("X")
    lead = fs[0].poly_coeffs("X")
    if set(lead) != {1}:
        raise NotInvertible("leading term is not linear in omega")
    c = lead[1]
    mu = sym("mu")
    sol = PuiseuxSeries(KAPPA_INV, {0: mu / c}, n_terms)
    polys = [f.poly_coeffs("X") for f in fs]
    for _ in range(n_terms):
        acc = PuiseuxSeries(KAPPA_INV, {0: mu}, n_terms)
        for m in range(1, n_terms):
            if not polys[m]:
                continue
            val = PuiseuxSeries(KAPPA_INV, {}, n_terms)
            for p in range(max(polys[m]), -1, -1):
                val = val * sol + polys[m].get(p, ZERO)
            acc = acc - val.shift(m)
        new = acc * (1 / c)
        new = new.truncate(n_terms)
        if new == sol:
            break
        sol = new
    return sol


@lru_cache(maxsize=None)
def _magnetic_fs(n_terms: int, k2_zero: bool = False) -> tuple[RatFunc, ...]:
    order = n_terms + 1
    S = p0_contour_series("magnetic", order).series
    ops = [minimal_operator(2 * l, "omega") for l in range((n_terms + 1) // 2 + 1)]
    if k2_zero:
        S = S.subs({"k2": 0})
        ops = [D.subs({"k2": 0}) for D in ops]
    # mu = (1/(i pi)) * i kappa * sum ... * pi S  =  kappa * sum ...
    return _small_region_fs("magnetic", n_terms, ops, S, "omega", ONE)


@lru_cache(maxsize=None)
def _dyonic_fs(n_terms: int) -> tuple[RatFunc, ...]:
    order = n_terms + 1
    C = p0_contour_series("dyonic", order).series
    kp = sym("kp")
    ops = [minimal_operator(2 * l, "omega_tilde").subs({"k2": 1 - kp ** 2})
           for l in range((n_terms + 1) // 2 + 1)]
    # mu = (k'/pi) * i kappa * sum ... * pi C
    return _small_region_fs("dyonic", n_terms, ops, C, "omegat", I * kp)


@lru_cache(maxsize=None)
def _mathieu_fs(n_terms: int) -> tuple[RatFunc, ...]:
    """The magnetic f_m built from Mathieu-chart operators acting in u = w - 1 = 2 omega."""
    order = n_terms + 1
    S = p0_contour_series("magnetic", order).series.subs({"k2": 0})
    # S as a series in u: omega^r = (u/2)^r
    S_u = PuiseuxSeries("u", {e: c * Fraction(1, 2) ** int(e) for e, c in S.terms.items()}, S.prec)
    ops = []
    for l in range((n_terms + 1) // 2 + 1):
        M = mathieu_limit(minimal_operator(2 * l, "omega"))
        ops.append(DiffOperator.from_dict(M.order, "mathieu",
                                          {j: c.subs({"w": sym("w") + 1}) for j, c in M.coeffs}))
    # apply in the variable u (named w after the shift), then rewrite u = 2 x v
    X = sym("X")
    fs = [[] for _ in range(n_terms)]
    for l, D in enumerate(ops):
        image = apply_operator(D, S_u.with_variable("w"), "w") if l else S_u
        for r, c in image.terms.items():
            m = 2 * l - 1 + int(r)
            if m < n_terms:
                fs[m].append(c * 2 ** l * (2 * X) ** int(r))
    return tuple(rsum(t) for t in fs)


def floquet_series(region: str, order: int) -> FloquetSeries:
    """mu in the region's expansion; ``order`` counts terms after the leading one."""
    if region == "electric":
        return electric_floquet(order + 1)
    if region == "magnetic":
        return FloquetSeries(region, _magnetic_fs(order + 1))
    if region == "dyonic":
        return FloquetSeries(region, _dyonic_fs(order + 1))
    if region == "mathieu_magnetic":
        return FloquetSeries(region, _mathieu_fs(order + 1))
    raise ValueError(f"unknown region {region!r}")


def _a_from_x(x: PuiseuxSeries, dyonic: bool) -> PuiseuxSeries:
    A = x.shift(-1)  # kappa^2 omega = x / v
    if dyonic:
        A = A + PuiseuxSeries(KAPPA_INV, {-2: -1})
    return A


def eigenvalue_from_floquet(region: str, order: int, k2_order: int = 5):
    """A(mu).

    magnetic/dyonic: a series in 1/kappa from kappa^1 through kappa^-order,
    coefficients in (mu, k2) resp. (mu, kp).
    electric: {mu power: coefficient} for the bands mu^2, mu^0, ..., mu^(-2*order),
    each coefficient exact through k2^k2_order.
    """
    if region == "electric":
        return electric_A_bands(order, k2_order)
    n_terms = order + 2
    if region == "magnetic":
        fs = _magnetic_fs(n_terms)
    elif region == "dyonic":
        fs = _dyonic_fs(n_terms)
    elif region == "mathieu_magnetic":
        fs = _mathieu_fs(n_terms)
    else:
        raise ValueError(f"unknown region {region!r}")
    x = _solve_for_x(fs, n_terms)
    return _a_from_x(x, region == "dyonic")


__all__ = [
    "apply_operator", "FloquetSeries", "floquet_series", "eigenvalue_from_floquet",
    "electric_A_bands", "electric_bands", "KAPPA_INV", "MU_INV", "H_INV_HALF",
]
