"""Region-tagged eigenvalue expansions for the Mathieu and Lamé operators.

Series variables used for the outputs:

* Mathieu electric: ``h`` (coefficients in nu)
* Mathieu magnetic/dyonic: ``h^-1/2`` (coefficients in nu)
* Lamé B, electric: ``q`` (coefficients in nu, nn1 = n(n-1))
* Lamé A, electric: ``mu^-1``; every band coefficient is a polynomial in k2
  kept exactly below the power recorded in ``inner``
* Lamé A, magnetic: ``kappa^-1`` (coefficients in mu, k2)
* Lamé A, dyonic: ``kappa^-1`` (coefficients in mu, kp), k2 = 1 - kp^2
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Optional

from .errors import (
    AmbiguousRegion, InsufficientOrder, LimitMismatch, RegroupMismatch, RouteDisagreement,
)
from .instanton import f_pure_nu, f_star_nu_n
from .modular import (
    e_roots, eisenstein_e2, elliptic_KE_numeric, k2_of_q, modulus_nome, theta_fourth_powers,
)
from .ratfunc import I, ONE, ZERO, RatFunc, rsum, sym
from .series import PuiseuxSeries, ratfunc_as_series, series_compose, series_pow
from .wkb.assembly import KAPPA_INV, MU_INV, H_INV_HALF, eigenvalue_from_floquet

REGIONS = ("electric", "magnetic", "dyonic")
REGION_ALIASES = {
    "large-quasimomentum": "electric",
    "potential-well-top": "magnetic",
    "potential-well-bottom": "dyonic",
}

_nu, _mu, _nn1, _k2, _kp, _h, _X = (sym(s) for s in ("nu", "mu", "nn1", "k2", "kp", "h", "X"))

VALIDITY = {
    ("mathieu", "electric"): ("|nu| >> 1", "|h|/|nu|^2 << 1"),
    ("mathieu", "magnetic"): ("|h| >> 1", "|h|/|nu|^2 >> 1"),
    ("mathieu", "dyonic"): ("|h| >> 1", "|h|/|nu|^2 >> 1"),
    ("lame", "electric"): ("|mu| >> 1", "|kappa|/|mu| << 1", "|n| q^(1/4) << |nu|"),
    ("lame", "magnetic"): ("|n k| >> 1", "|n k| >> |mu|"),
    ("lame", "dyonic"): ("|n k| >> 1", "|n k| >> |mu|"),
}


def canonical_region(region: str) -> str:
    region = REGION_ALIASES.get(region, region)
    if region not in REGIONS:
        raise ValueError(f"unknown region {region!r}")
    return region


@dataclass(frozen=True)
class EigenvalueExpansion:
    equation: str
    region: str
    form: str
    series: PuiseuxSeries
    validity: tuple = ()
    route: str = "wkb"
    #: (symbol, exclusive order) when coefficients are truncated polynomials
    inner: tuple = ()

    def to_dict(self) -> dict:
        d = {
            "equation": self.equation,
            "region": self.region,
            "form": self.form,
            "series": self.series.to_dict(),
            "validity": list(self.validity),
            "route": self.route,
        }
        if self.inner:
            d["inner_truncation"] = {"variable": self.inner[0], "order": str(self.inner[1])}
        return d

    def to_json(self, **kw) -> str:
        return json.dumps(self.to_dict(), **kw)

    def coefficient(self, e) -> RatFunc:
        return self.series.coefficient(e)


class MathieuExpansion(EigenvalueExpansion):
    pass


class LameExpansion(EigenvalueExpansion):
    pass


def _mathieu(region, series, route, inner=()) -> MathieuExpansion:
    return MathieuExpansion("mathieu", region, "lambda", series, VALIDITY[("mathieu", region)], route, inner)


def _lame(region, form, series, route, inner=()) -> LameExpansion:
    return LameExpansion("lame", region, form, series, VALIDITY[("lame", region)], route, inner)


def _power(c: RatFunc, m: int) -> RatFunc:
    return c ** m


# ---------------------------------------------------------------------------
# Mathieu

def _v_to_h_half(A: PuiseuxSeries) -> PuiseuxSeries:
    """A series in v = 1/kappa with kappa = 2 i sqrt(h): v = (-i/2) s, s = h^(-1/2)."""
    factor = -I / 2
    return PuiseuxSeries(H_INV_HALF, {e: c * _power(factor, int(e)) for e, c in A.terms.items()},
                         A.prec)


def mathieu_dyonic_map(series: PuiseuxSeries) -> PuiseuxSeries:
    """nu -> i nu, h -> -h on a series in s = h^(-1/2), with sqrt(-h) = i sqrt(h).

    The map is its own inverse up to the branch: applying it twice sends
    nu -> -nu and s -> -s, which leaves the series invariant.
    """
    out = {}
    for e, c in series.terms.items():
        out[e] = c.subs({"nu": I * _nu}) * _power(-I, int(e))
    return PuiseuxSeries(series.var, out, series.prec)


def mathieu_expansion(region: str, order: int) -> MathieuExpansion:
    """lambda(nu, h).

    electric: ``order`` is the highest power of h kept (odd powers vanish).
    magnetic/dyonic: ``order`` is the highest power of h^(-1/2) kept.
    """
    region = canonical_region(region)
    if region == "electric":
        levels = max(order // 2, 0)
        F = f_pure_nu(levels) if levels else []
        terms = {0: _nu ** 2}
        for l, f in enumerate(F, start=1):
            terms[2 * l] = f * (4 * l) / 4 ** (2 * l)
        return _mathieu(region, PuiseuxSeries("h", terms, 2 * levels + 2), "instanton")
    A = eigenvalue_from_floquet("mathieu_magnetic", order)
    s = _v_to_h_half(A).map_coeffs(lambda c: c.subs({"mu": _nu}))
    lam = PuiseuxSeries(H_INV_HALF, {-2: 2}) - s
    if region == "magnetic":
        return _mathieu(region, lam, "wkb")
    return _mathieu(region, mathieu_dyonic_map(lam), "wkb")


# ---------------------------------------------------------------------------
# Lamé B, electric

@lru_cache(maxsize=None)
def _lame_B_series(order: int) -> PuiseuxSeries:
    F = f_star_nu_n(order) if order else []
    e2 = eisenstein_e2(order)
    const = (1 - e2 * 2) * (-_nn1 / 3)
    inst = PuiseuxSeries("q", {l: -4 * l * f for l, f in enumerate(F, start=1)}, order + 1)
    return PuiseuxSeries("q", {0: -_nu ** 2}) + const + inst


def lame_B_electric(order: int = 2) -> LameExpansion:
    """B(nu, n, q) through q^order from the adjoint-matter prepotential."""
    if order < 0:
        raise ValueError("order must be nonnegative")
    return _lame("electric", "B", _lame_B_series(order), "instanton")


def instanton_part(order: int) -> PuiseuxSeries:
    """-4 sum_l l F_l q^l (the part of B coming from instantons)."""
    F = f_star_nu_n(order) if order else []
    return PuiseuxSeries("q", {l: -4 * l * f for l, f in enumerate(F, start=1)}, order + 1)


# ---------------------------------------------------------------------------
# conversions A <-> B

def _large_nu(r: RatFunc, bands: int) -> dict[int, RatFunc]:
    """{i: c_i} with r = sum_i c_i nu^(-2i) + ..., for i <= bands (i may be -1)."""
    s = ratfunc_as_series(r.subs({"nu": 1 / _X}), "X", 2 * bands + 1)
    out = {}
    for e, c in s.terms.items():
        if e.denominator != 1 or int(e) % 2:
            raise InsufficientOrder(f"odd power nu^{-e} in a coefficient")
        out[int(e) // 2] = c
    return out


def _q_series_to_k2(s: PuiseuxSeries, k2_prec: int) -> PuiseuxSeries:
    """Compose a series in q (half-integer lattice) with q^(1/2) = Q(k2)."""
    half = s.rescale(2, var="sqrtq")
    Q = modulus_nome("q_of_k2", k2_prec)
    return series_compose(half, Q).truncate(k2_prec)


def _poly_from_series(s: PuiseuxSeries, var: str) -> RatFunc:
    v = sym(var)
    return rsum([c * v ** int(e) for e, c in s.terms.items()])


def _b_to_a(B: PuiseuxSeries, mu_bands: int, k2_order: int) -> dict[int, RatFunc]:
    """Bands {mu power: polynomial in k2} of A from the electric B series."""
    L = int(B.prec) - 1 if B.prec is not None else None
    if L is not None and k2_order > 2 * L + 1:
        raise InsufficientOrder(f"B through q^{L} determines A only through k2^{2*L+1}")
    qprec = Fraction(k2_order + 1, 2)
    _, t3, _ = theta_fourth_powers(qprec)
    t3 = t3.truncate(qprec)
    bands: dict[int, PuiseuxSeries] = {}
    for l, c in B.terms.items():
        if l >= qprec:
            continue
        parts = _large_nu(c, mu_bands)
        for i, ci in parts.items():
            if i == -1:
                if l != 0 or ci != -ONE:
                    raise InsufficientOrder("unexpected nu^2 dependence beyond -nu^2")
                continue
            if i > mu_bands:
                continue
            bands.setdefault(i, PuiseuxSeries("q", {}, qprec))
            bands[i] = bands[i] + PuiseuxSeries("q", {l: ci}, qprec)
    out = {2: -ONE}
    for i in range(mu_bands + 1):
        bq = bands.get(i, PuiseuxSeries("q", {}, qprec)) * series_pow(t3, -(i + 1), prec=qprec)
        poly = _poly_from_series(_q_series_to_k2(bq.truncate(qprec), k2_order + 1), "k2")
        if i == 0:
            poly = poly - (1 + _k2) * _nn1 / 3
        out[-2 * i] = poly
    return out


def _a_to_b(bands: dict[int, RatFunc], k2_order: int) -> PuiseuxSeries:
    """B = theta3^4 A(nu / theta3^2, k2(q)) - e2 n(n-1) through the q order fixed by k2_order."""
    qprec = Fraction(k2_order + 1, 2)
    _, t3, _ = theta_fourth_powers(qprec)
    e2 = e_roots(qprec).e2.truncate(qprec)
    t3 = t3.truncate(qprec)
    k2q = k2_of_q(qprec).truncate(qprec)
    total = PuiseuxSeries("q", {}, qprec) - e2 * _nn1
    for p, c in bands.items():
        i = -p // 2  # mu^p = mu^(-2i) = nu^(-2i) theta3^(4i)
        poly = PuiseuxSeries("k2", c.poly_coeffs("k2"))
        val = series_compose(poly, k2q).truncate(qprec)
        total = total + val * series_pow(t3, i + 1, prec=qprec) * _nu ** (-2 * i)
    return total


def convert_A_B(expansion: LameExpansion, direction: Optional[str] = None,
                mu_bands: int = 2, k2_order: Optional[int] = None) -> LameExpansion:
    """Electric-region conversion between B(nu, q) and A(mu, k)."""
    if expansion.region != "electric":
        raise ValueError("only the electric expansions are converted")
    direction = direction or ("B_to_A" if expansion.form == "B" else "A_to_B")
    if direction == "B_to_A":
        if expansion.form != "B":
            raise ValueError("input is not a B expansion")
        L = int(expansion.series.prec) - 1
        N = 2 * L + 1 if k2_order is None else k2_order
        bands = _b_to_a(expansion.series, mu_bands, N)
        series = PuiseuxSeries(MU_INV, {-p: c for p, c in bands.items()}, 2 * mu_bands + 2)
        return _lame("electric", "A", series, "convert", ("k2", N + 1))
    if direction == "A_to_B":
        if expansion.form != "A":
            raise ValueError("input is not an A expansion")
        N = int(expansion.inner[1]) - 1
        bands = {-int(e): c for e, c in expansion.series.terms.items()}
        bands.pop(2, None)
        series = _a_to_b(bands, N) + PuiseuxSeries("q", {0: -_nu ** 2})
        nb = (int(expansion.series.prec) - 2) // 2
        return _lame("electric", "B", series, "convert", ("nu^-1", 2 * nb + 1))
    raise ValueError(f"unknown direction {direction!r}")


def large_nu_truncation(B: PuiseuxSeries, mu_bands: int) -> PuiseuxSeries:
    """Replace each coefficient of a B series by its large-nu expansion through nu^(-2 mu_bands)."""
    out = {}
    for e, c in B.terms.items():
        parts = _large_nu(c, mu_bands)
        out[e] = rsum([ci * _nu ** (-2 * i) for i, ci in parts.items() if i <= mu_bands])
    return PuiseuxSeries(B.var, out, B.prec)


# ---------------------------------------------------------------------------
# Lamé A in the three regions

def _electric_wkb(k2_order: int, mu_bands: int) -> PuiseuxSeries:
    bands = eigenvalue_from_floquet("electric", mu_bands, k2_order)
    return PuiseuxSeries(MU_INV, {-p: c for p, c in bands.items()}, 2 * mu_bands + 2)


def lame_A_expansion(region: str, order: Optional[int] = None, route: str = "wkb",
                     mu_bands: int = 2, cross_check: bool = False) -> LameExpansion:
    """A(mu, k).

    electric: ``order`` is the highest power of k^2 kept in every band
    (default 5, i.e. k^10); ``mu_bands`` counts the 1/mu^2 bands.
    magnetic/dyonic: ``order`` is the highest power of 1/kappa kept (default 2).
    With ``cross_check`` both available routes are computed and compared.
    """
    region = canonical_region(region)
    if region == "electric":
        N = 5 if order is None else order
        wkb = lambda: _lame("electric", "A", _electric_wkb(N, mu_bands), "wkb", ("k2", N + 1))
        conv = lambda: convert_A_B(lame_B_electric(max((N + 1) // 2, 0)), "B_to_A", mu_bands, N)
    elif region == "magnetic":
        M = 2 if order is None else order
        wkb = lambda: _lame("magnetic", "A", eigenvalue_from_floquet("magnetic", M), "wkb")
        conv = None
    else:
        M = 2 if order is None else order
        wkb = lambda: _lame("dyonic", "A", eigenvalue_from_floquet("dyonic", M), "wkb")
        conv = lambda: dyonic_from_magnetic(lame_A_expansion("magnetic", M))
    if route not in ("wkb", "convert"):
        raise ValueError(f"unknown route {route!r}")
    if route == "convert" and conv is None:
        raise ValueError(f"no conversion route for the {region} region")
    result = wkb() if route == "wkb" else conv()
    if cross_check and conv is not None:
        other = conv() if route == "wkb" else wkb()
        if other.series != result.series:
            raise RouteDisagreement(_first_difference(result.series, other.series))
    return result


def _first_difference(a: PuiseuxSeries, b: PuiseuxSeries) -> str:
    for e in sorted(set(a.terms) | set(b.terms)):
        if a.terms.get(e, ZERO) != b.terms.get(e, ZERO):
            return f"{a.var}^{e}: {a.terms.get(e, ZERO)} != {b.terms.get(e, ZERO)}"
    return "truncation orders differ"


def route_agreement(region: str, order: Optional[int] = None, mu_bands: int = 2) -> dict:
    """Compute both routes and report term-by-term equality."""
    region = canonical_region(region)
    if region == "magnetic":
        raise ValueError("the magnetic region has a single route")
    a = lame_A_expansion(region, order, "wkb", mu_bands)
    b = lame_A_expansion(region, order, "convert", mu_bands)
    mism = [str(e) for e in sorted(set(a.series.terms) | set(b.series.terms))
            if a.series.terms.get(e, ZERO) != b.series.terms.get(e, ZERO)]
    return {"region": region, "agree": not mism and a.series.prec == b.series.prec,
            "mismatched_exponents": mism, "wkb": a, "convert": b}


def dyonic_from_magnetic(expansion: LameExpansion) -> LameExpansion:
    """A_d = k'^2 A_m(i mu/k', ik/k') - k^2 n(n-1).

    On the series in v = 1/kappa this is mu -> i mu/kp, k2 -> -(1-kp^2)/kp^2,
    v -> -i kp v, an overall kp^2 and the extra -kappa^2 = -v^(-2).
    """
    if expansion.region != "magnetic" or expansion.form != "A":
        raise ValueError("dyonic_from_magnetic expects the magnetic A expansion")
    s = expansion.series
    sub = {"mu": I * _mu / _kp, "k2": -(1 - _kp ** 2) / _kp ** 2}
    terms = {e: c.subs(sub) * _power(-I * _kp, int(e)) * _kp ** 2 for e, c in s.terms.items()}
    out = PuiseuxSeries(s.var, terms, s.prec) + PuiseuxSeries(s.var, {-2: -1})
    return _lame("dyonic", "A", out, "convert")


# ---------------------------------------------------------------------------
# decoupling limits

def _collect_limit(terms, var: str, prec) -> PuiseuxSeries:
    acc: dict[Fraction, list] = {}
    for e, c in terms:
        acc.setdefault(Fraction(e), []).append(c)
    return PuiseuxSeries(var, {e: rsum(v) for e, v in acc.items()}, prec)


def decoupling_limit(expansion: LameExpansion) -> MathieuExpansion:
    """Lamé -> Mathieu.

    electric B: nn1 sqrt(q) -> -h/4 with lambda = -B + nn1/3;
    electric A: nn1 k2 -> -4h with lambda = -A + 2h (result keeps mu as nu,
    coefficients are truncated Laurent polynomials in nu);
    magnetic/dyonic A: k -> 0 at fixed kappa = 2 i sqrt(h), lambda = -A + 2h.
    """
    if expansion.equation != "lame":
        raise ValueError("input must be a Lamé expansion")
    s = expansion.series
    region = expansion.region
    if region == "electric" and expansion.form == "B":
        lam = -s + _nn1 / 3
        out = []
        for b, c in lam.terms.items():
            for a, ca in c.poly_coeffs("nn1").items():
                p = b - Fraction(a, 2)
                if p < 0:
                    raise LimitMismatch(f"term nn1^{a} q^{b} diverges in the limit")
                if p == 0:
                    out.append((a, ca * Fraction(-1, 4) ** a))
        prec = None if s.prec is None else 2 * s.prec
        return _mathieu("electric", _collect_limit(out, "h", prec), "convert")
    if region == "electric" and expansion.form == "A":
        N = int(expansion.inner[1]) - 1
        out = []
        for e, c in s.terms.items():
            mu_pow = -int(e)
            c = c.subs({"mu": _nu})
            for b, cb in c.poly_coeffs("k2").items():
                for a, ca in cb.poly_coeffs("nn1").items():
                    if b < a:
                        raise LimitMismatch(f"term nn1^{a} k2^{b} diverges in the limit")
                    if b == a:
                        out.append((a, -ca * (-4) ** a * _nu ** mu_pow))
        out.append((1, RatFunc(2)))
        return _mathieu("electric", _collect_limit(out, "h", N + 1), "convert",
                        ("nu^-1", s.prec))
    if region in ("magnetic", "dyonic") and expansion.form == "A":
        sub = {"k2": 0} if region == "magnetic" else {"kp": 1}
        A0 = s.map_coeffs(lambda c: c.subs(sub).subs({"mu": _nu}))
        lam = PuiseuxSeries(H_INV_HALF, {-2: 2}) - _v_to_h_half(A0)
        return _mathieu(region, lam, "convert")
    raise ValueError("unsupported expansion for the decoupling limit")


# ---------------------------------------------------------------------------
# Langmann form

@dataclass(frozen=True)
class LangmannReport:
    order: int
    B: PuiseuxSeries
    B_langmann: PuiseuxSeries
    absorbed: PuiseuxSeries
    u1_relation: bool

    def to_dict(self) -> dict:
        return {"order": self.order, "B": self.B.to_dict(), "B_langmann": self.B_langmann.to_dict(),
                "absorbed": self.absorbed.to_dict(), "u1_relation": self.u1_relation}


def langmann_compare(order: int = 2) -> LangmannReport:
    """Regroup B so that the constant band reads (n(n-1)/3) E2(q).

    The part of the instanton series linear in n(n-1) and free of nu must
    equal (n(n-1)/3)(1 - E2) at every order; it is moved into the constant
    band, after which the remaining instanton coefficients carry n^2(n-1)^2.
    """
    from .instanton import u1_shift

    B = _lame_B_series(order)
    inst = instanton_part(order)
    e2 = eisenstein_e2(order)
    absorbed_terms = {}
    rest_terms = {}
    for l, c in inst.terms.items():
        coeffs = c.poly_coeffs("nn1") if c.denom().symbols() <= {"nu"} else None
        if coeffs is None:
            raise RegroupMismatch(f"q^{l} coefficient is not polynomial in n(n-1)")
        lin = coeffs.get(1, ZERO)
        if "nu" in lin.symbols():
            raise RegroupMismatch(f"linear n(n-1) part at q^{l} depends on nu: {lin}")
        if coeffs.get(0, ZERO) != ZERO:
            raise RegroupMismatch(f"q^{l} coefficient has an n(n-1)-free part")
        absorbed_terms[l] = lin * _nn1
        rest_terms[l] = c - lin * _nn1
    absorbed = PuiseuxSeries("q", absorbed_terms, order + 1)
    target = (1 - e2) * (_nn1 / 3)
    if absorbed != target:
        raise RegroupMismatch(f"absorbed part {absorbed.to_text()} differs from n(n-1)(1-E2)/3")
    for l, c in rest_terms.items():
        if c != ZERO and min(c.poly_coeffs("nn1")) < 2:
            raise RegroupMismatch(f"remaining q^{l} coefficient is not divisible by n^2(n-1)^2")
    langmann = (PuiseuxSeries("q", {0: -_nu ** 2}) + e2 * (_nn1 / 3)
                + PuiseuxSeries("q", rest_terms, order + 1))
    if langmann != B:
        raise RegroupMismatch("regrouped series differs from B")
    u1 = u1_shift(order, "nu_n")
    return LangmannReport(order, B, langmann, absorbed, absorbed == u1 * 4)


# ---------------------------------------------------------------------------
# region advice

@dataclass(frozen=True)
class RegionAdvice:
    region: str
    alternatives: tuple
    satisfied: bool
    margins: dict
    rationale: str


def _score(ratios: dict[str, float], margin: float) -> float:
    """min over inequalities of log(ratio)/log(margin); >= 1 means all hold with the margin."""
    lm = math.log(margin)
    return min(math.log(max(r, 1e-300)) / lm for r in ratios.values())


def _numeric_nome(m: float) -> float:
    """q with theta3 = 1 + 2 sum q^(n^2/2), i.e. q = exp(-2 pi K'/K)."""
    K, _ = elliptic_KE_numeric(m)
    Kp, _ = elliptic_KE_numeric(1.0 - m)
    return math.exp(-2.0 * math.pi * Kp / K)


def region_advise(*, nu: Optional[float] = None, mu: Optional[float] = None,
                  n: Optional[float] = None, h: Optional[float] = None,
                  k: Optional[float] = None, margin: float = 10.0) -> RegionAdvice:
    """Pick the expansion region whose inequalities hold best (absolute values)."""
    if margin <= 1:
        raise ValueError("margin must exceed 1")
    checks: dict[str, dict[str, float]] = {}
    if h is not None:
        x = abs(nu if nu is not None else mu)
        hh = abs(h)
        checks["electric"] = {"|nu| >> 1": x, "|h|/|nu|^2 << 1": x * x / hh if hh else math.inf}
        strong = {"|h| >> 1": hh, "|h|/|nu|^2 >> 1": hh / (x * x) if x else math.inf}
        checks["magnetic"] = dict(strong)
        checks["dyonic"] = dict(strong)
    elif n is not None and k is not None:
        x = abs(mu if mu is not None else nu)
        kappa = math.sqrt(abs(n * (n - 1))) * abs(k)
        q = _numeric_nome(k * k) if k else 0.0
        checks["electric"] = {
            "|n| q^(1/4) << |nu|": x / (abs(n) * q ** 0.25) if q else math.inf,
            "|kappa|/|mu| << 1": x / kappa if kappa else math.inf,
        }
        nk = abs(n * k)
        strong = {"|n k| >> 1": nk, "|n k| >> |mu|": nk / x if x else math.inf}
        checks["magnetic"] = dict(strong)
        checks["dyonic"] = dict(strong)
    else:
        raise ValueError("supply h (Mathieu) or n and k (Lamé)")
    lm = math.log(margin)
    any_ok = any(math.log(max(r, 1e-300)) >= lm for c in checks.values() for r in c.values())
    if not any_ok:
        raise AmbiguousRegion("no validity inequality holds with the requested margin")
    scores = {reg: _score(c, margin) for reg, c in checks.items()}
    best = max(scores.values())
    winners = tuple(r for r in REGIONS if scores[r] == best)
    region = winners[0]
    rationale = ", ".join(f"{name}: {ratio:.3g}" for name, ratio in checks[region].items())
    return RegionAdvice(region, winners[1:], best >= 1, {r: dict(c) for r, c in checks.items()},
                        f"{region} (score {best:.3g}; {rationale})")


__all__ = [
    "EigenvalueExpansion", "MathieuExpansion", "LameExpansion", "mathieu_expansion",
    "mathieu_dyonic_map", "lame_B_electric", "instanton_part", "lame_A_expansion",
    "convert_A_B", "large_nu_truncation", "dyonic_from_magnetic", "decoupling_limit",
    "langmann_compare", "LangmannReport", "region_advise", "RegionAdvice", "route_agreement",
    "canonical_region", "REGIONS", "REGION_ALIASES",
]
