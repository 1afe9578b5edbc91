"""WKB recursion, total-derivative stripping and minimal operators.

Normalization.  With p_n = -i (sqrt 2)^(1-n) r_n the recursion becomes

    r_0 = -sqrt(t),   r_n = -(r_{n-1}' + sum_{a+b=n, a,b>=1} r_a r_b) / (2 r_0),

which has rational coefficients only.  If the stripped r_{2l} equals
sum_j c_j t^(1/2-j), then  oint p_{2l} = D_{2l} oint p_0  with

    D_{2l} = -2^(-l) sum_j (c_j / f_j) d^j/d(param)^j,
    f_j = (1/2)(-1/2)...(3/2-j)   (so that d^j sqrt(t) = f_j t^(1/2-j)).
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from ..errors import MinimizationFailed, ReductionStuck
from ..ratfunc import ONE, ZERO, RatFunc, sym
from .ring import CHARTS, EllipticIntegrand

HALF = Fraction(1, 2)


@lru_cache(maxsize=None)
def wkb_recursion(n_max: int, chart: str = "omega") -> tuple[EllipticIntegrand, ...]:
    """r_0 .. r_{n_max} in the rescaled normalization (see module docstring)."""
    r = [EllipticIntegrand.t_power(HALF, -1, chart)]
    inv_2r0 = EllipticIntegrand.t_power(-HALF, Fraction(-1, 2), chart)  # 1/(2 r_0)
    for n in range(1, n_max + 1):
        acc = r[n - 1].d()
        for a in range(1, n):
            acc = acc + r[a] * r[n - a]
        r.append(-(acc * inv_2r0))
    return tuple(r)


def p_prefactor(n: int):
    """p_n = prefactor * r_n with prefactor = -i (sqrt 2)^(1-n); returned as
    (rational part, has_sqrt2) because sqrt 2 is not in the coefficient field."""
    e = 1 - n
    I = sym("I")
    if e % 2 == 0:
        return -I * Fraction(2) ** (e // 2), False
    return -I * Fraction(2) ** ((e - 1) // 2), True


# ---------------------------------------------------------------------------
# total derivatives

@dataclass(frozen=True)
class Certificate:
    """List of (coefficient, exponent, order) meaning coeff * d^order/dX^order t^(-exponent),
    optionally pre-multiplied by a chart-parameter polynomial (folded into coeff)."""

    entries: tuple = ()
    #: coefficient c of an extra c * d/dX log t = 2 c w / t
    log_coefficient: Fraction = Fraction(0)

    def generators(self, chart: str) -> EllipticIntegrand:
        acc = EllipticIntegrand.t_power(-1, 2 * self.log_coefficient, chart, w_power=1)
        for coeff, expo, order in self.entries:
            g = EllipticIntegrand.t_power(-expo, 1, chart)
            for _ in range(order):
                g = g.d()
            acc = acc + g.scale(coeff)
        return acc

    def verify(self, original: EllipticIntegrand, reduced: EllipticIntegrand) -> bool:
        """Exact re-differentiation: original - sum(generators) == reduced."""
        return original - self.generators(original.chart) == reduced


def _generator(expo: Fraction, order: int, chart: str) -> EllipticIntegrand:
    g = EllipticIntegrand.t_power(-expo, 1, chart)
    for _ in range(order):
        g = g.d()
    return g


def strip_odd(p: EllipticIntegrand):
    """Remove every w t^j term (j != -1) as d/dX t^(j+1) / (2(j+1))."""
    A, B = p.w_parts()
    if A:
        raise ReductionStuck("odd-order integrand has a w-free part")
    entries = []
    for j, c in B.items():
        if j == -1:
            raise ReductionStuck("logarithmic total derivative w/t encountered")
        entries.append((c / (2 * (j + 1)), -(j + 1), 1))
    cert = Certificate(tuple(entries))
    reduced = p - cert.generators(p.chart)
    if not reduced.is_zero():
        raise ReductionStuck("odd-order integrand did not reduce to zero")
    return reduced, cert


def _mathieu_limit_coeff(c: RatFunc, chart: str) -> RatFunc:
    ch = CHARTS[chart]
    return c.subs({"k2": 0, ch.param: ch.mathieu_image})


def _step3_factor(chart: str, l: int) -> RatFunc:
    """Extra k-dependence of the minimization multipliers.

    In the omega chart the multipliers are rational constants times powers
    of (2 omega + 1).  Under the mirror map every generator operator picks
    up (k'^2)^(l-1), so the mirror-covariant choice in the omega_tilde chart
    carries that factor; it is 1 in the Mathieu limit and does not affect
    the minimality criterion.
    """
    if chart == "omega_tilde":
        return (1 - sym("k2")) ** (l - 1)
    return ONE


def strip_even(p: EllipticIntegrand, l: int, minimize: bool = True):
    """Steps two and three of the reduction for r_{2l}.

    Returns (reduced integrand, certificate).  Step two cancels the lowest
    t-power l times with d^2/dX^2 t^-(3l-3/2-l'), l' = 1..l.  Step three
    (``minimize``) adds multiples (weight)^(l-r-2s) of the l' = l+1+r
    generators so that every Mathieu-limit coefficient becomes a single
    power of w.
    """
    chart = p.chart
    A, B = p.w_parts()
    if B:
        raise ReductionStuck("even-order integrand has a w part")
    entries = []
    cur = p
    for lp in range(1, l + 1):
        a = 3 * l - Fraction(3, 2) - lp
        target = -(a + 2)
        lead = cur.coefficient(target)
        g = _generator(a, 2, chart)
        glead = g.coefficient(target)
        if glead.is_zero():
            raise ReductionStuck(f"generator for l'={lp} has no leading term")
        if lead.is_zero():
            continue
        c = lead / glead
        entries.append((c, a, 2))
        cur = cur - g.scale(c)
        if not cur.coefficient(target).is_zero():
            raise ReductionStuck("leading term survived cancellation")
    if minimize:
        weight = CHARTS[chart].weight
        w = sym("w")
        for r in range(0, l - 1):
            a = 2 * l - Fraction(5, 2) - r
            target = -(a + 2)
            g = _generator(a, 2, chart)
            glim = _mathieu_limit_coeff(g.coefficient(target), chart)
            cur_lim = _mathieu_limit_coeff(cur.coefficient(target), chart)
            deg = l - r
            smax = deg // 2
            for s in range(smax, 0, -1):
                power = deg - 2 * s
                # contribution of (weight^power * g) to the limit coefficient
                contrib = w ** power * glim
                cur_c = cur_lim.poly_coeffs("w").get(power, ZERO) if not cur_lim.is_zero() else ZERO
                g_c = contrib.poly_coeffs("w").get(power, ZERO)
                if g_c.is_zero():
                    raise MinimizationFailed(f"generator cannot reach w^{power} at r={r}")
                if cur_c.is_zero():
                    continue
                b = cur_c / g_c
                coeff = weight ** power * b * _step3_factor(chart, l)
                entries.append((coeff, a, 2))
                cur = cur - g.scale(coeff)
                cur_lim = _mathieu_limit_coeff(cur.coefficient(target), chart)
            # verify monomial
            if not cur_lim.is_zero():
                pc = cur_lim.poly_coeffs("w")
                if set(pc) - {deg}:
                    raise MinimizationFailed(
                        f"limit coefficient at t^{target} is not a single power w^{deg}: {cur_lim}")
    return cur, Certificate(tuple(entries))


def strip_total_derivatives(p: EllipticIntegrand, order: int, minimize: bool = True):
    """Dispatch on parity; ``order`` is the WKB index n of p = r_n."""
    if order % 2:
        if order == 1:
            # r_1 = -w/(2t) = -(1/4) d/dX log t: total derivative of a logarithm
            cert = Certificate((), Fraction(-1, 4))
            reduced = p - cert.generators(p.chart)
            if not reduced.is_zero():
                raise ReductionStuck("first-order integrand is not -(1/4) d log t")
            return reduced, cert
        return strip_odd(p)
    return strip_even(p, order // 2, minimize=minimize)


# ---------------------------------------------------------------------------
# operators

def _falling_half(j: int) -> Fraction:
    f = Fraction(1)
    for i in range(j):
        f *= HALF - i
    return f


@dataclass(frozen=True)
class DiffOperator:
    """sum_j coeffs[j] * d^j/d(param)^j."""

    order: int
    chart: str
    coeffs: tuple  # tuple of (j, RatFunc) sorted by j

    @classmethod
    def from_dict(cls, order: int, chart: str, d: dict) -> "DiffOperator":
        return cls(order, chart, tuple(sorted((int(j), RatFunc.coerce(c)) for j, c in d.items()
                                              if not RatFunc.coerce(c).is_zero())))

    def as_dict(self) -> dict:
        return dict(self.coeffs)

    def coefficient(self, j: int) -> RatFunc:
        return self.as_dict().get(j, ZERO)

    @property
    def degree(self) -> int:
        return max((j for j, _ in self.coeffs), default=0)

    def subs(self, mapping) -> "DiffOperator":
        return DiffOperator.from_dict(self.order, self.chart, {j: c.subs(mapping) for j, c in self.coeffs})

    def scale(self, c) -> "DiffOperator":
        return DiffOperator.from_dict(self.order, self.chart, {j: v * c for j, v in self.coeffs})

    def __eq__(self, other):
        return isinstance(other, DiffOperator) and self.as_dict() == other.as_dict()

    def __hash__(self):
        return hash(self.coeffs)

    def to_dict(self) -> dict:
        def render(c: RatFunc) -> str:
            return c.num_str() if c.den_str() == "1" else f"({c.num_str()})/({c.den_str()})"

        return {
            "order": self.order,
            "chart": self.chart,
            "terms": [{"d_degree": j, "coefficient_poly": render(c)} for j, c in sorted(self.coeffs, reverse=True)],
        }

    def to_json(self, **kw) -> str:
        return json.dumps(self.to_dict(), **kw)

    def __repr__(self):
        var = {"omega": "omega", "omega_tilde": "omegat", "mathieu": "w"}.get(self.chart, self.chart)
        return " + ".join(f"({c})*d{var}^{j}" for j, c in sorted(self.coeffs, reverse=True)) or "0"


def operator_from_reduced(reduced: EllipticIntegrand, l: int) -> DiffOperator:
    A, B = reduced.w_parts()
    if B:
        raise ReductionStuck("reduced even integrand still has a w part")
    out = {}
    scale = Fraction(-1, 2 ** l)
    for e, c in A.items():
        j = HALF - e
        if j.denominator != 1 or j < 0:
            raise ReductionStuck(f"t-power {e} does not map to a derivative")
        j = int(j)
        out[j] = c * (scale / _falling_half(j))
    return DiffOperator.from_dict(2 * l, reduced.chart, out)


@lru_cache(maxsize=None)
def reduce_order(n: int, chart: str = "omega", minimize: bool = True):
    r = wkb_recursion(n, chart)[n]
    return strip_total_derivatives(r, n, minimize=minimize)


@lru_cache(maxsize=None)
def minimal_operator(two_l: int, chart: str = "omega") -> DiffOperator:
    """D_{2l} in the requested chart; odd orders give the zero operator."""
    if two_l % 2:
        reduce_order(two_l, chart)  # raises if the integrand is not exact
        return DiffOperator.from_dict(two_l, chart, {})
    if two_l == 0:
        return DiffOperator.from_dict(0, chart, {0: 1})
    reduced, _ = reduce_order(two_l, chart)
    return operator_from_reduced(reduced, two_l // 2)


def mirror_operator(D: DiffOperator, n: int | None = None) -> DiffOperator:
    """omega-chart -> omega_tilde-chart under k -> ik/k', omega -> -omegat,
    eps -> -i k' eps (so eps^n D_n is invariant)."""
    if D.chart != "omega":
        raise ValueError("mirror_operator expects an omega-chart operator")
    n = D.order if n is None else n
    if n % 2:
        return DiffOperator.from_dict(n, "omega_tilde", {})
    k2 = sym("k2")
    kp2 = 1 - k2
    sub = {"k2": -k2 / kp2, "omega": -sym("omegat")}
    factor = (-1) ** (n // 2) * kp2 ** (n // 2)
    out = {j: c.subs(sub) * factor * (-1) ** j for j, c in D.coeffs}
    return DiffOperator.from_dict(n, "omega_tilde", out)


def inverse_mirror_operator(D: DiffOperator) -> DiffOperator:
    """Inverse map: omegat -> -omega, k2 -> -k2/(1-k2) (the map is an involution on k2)."""
    n = D.order
    k2 = sym("k2")
    sub = {"k2": -k2 / (1 - k2), "omegat": -sym("omega")}
    # the forward map divided by (-k'^2)^l of its own modulus, and
    # 1 - k2_image = 1/(1 - k2), so undoing it multiplies by (-(1 - k2))^l
    factor = (-1) ** (n // 2) * (1 - k2) ** (n // 2)
    out = {j: c.subs(sub) * factor * (-1) ** j for j, c in D.coeffs}
    return DiffOperator.from_dict(n, "omega", out)


def mathieu_limit(D: DiffOperator) -> DiffOperator:
    """k -> 0, omega -> (w-1)/2, d/domega -> 2 d/dw."""
    if D.chart not in CHARTS:
        raise ValueError("operator is already in the Mathieu chart")
    ch = CHARTS[D.chart]
    out = {j: c.subs({"k2": 0, ch.param: ch.mathieu_image}) * 2 ** j for j, c in D.coeffs}
    return DiffOperator.from_dict(D.order, "mathieu", out)


def chart_shift(D: DiffOperator) -> DiffOperator:
    """Re-express an omega-chart operator through omega = omegat - 1."""
    out = {j: c.subs({"omega": sym("omegat") - 1}) for j, c in D.coeffs}
    return DiffOperator.from_dict(D.order, "omega_tilde", out)


def structure_check(n: int, chart: str = "omega") -> bool:
    """r_{2l+1} = w * poly(S) / t^(3l+1) and r_{2l} = poly(S)/t^(3l-1/2)."""
    r = wkb_recursion(n, chart)[n]
    A, B = r.w_parts()
    l = n // 2
    if n % 2:
        if A:
            return False
        shift = Fraction(3 * l + 1)
        parity = 1
    else:
        if B:
            return False
        shift = Fraction(6 * l - 1, 2)
        parity = 0
    try:
        num = r.numerator_in_S(shift)
    except ValueError:
        return False
    return all(b == parity for (_, b) in num)
