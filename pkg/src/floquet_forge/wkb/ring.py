"""Closed differential ring for the WKB integrands.

Elements are finite sums  c * t^j * w^b  with j in (1/2)Z, b in {0, 1},
where t = omega + S, S = sn^2 X and w = sn cn dn X.  The relations

    w^2 = P(S) = S (1 - S)(1 - k^2 S),   dt/dX = 2 w,   dw/dX = P'(S)

keep the set closed under multiplication and d/dX.  P and P' are stored as
polynomials in t, so every element is a Laurent polynomial in sqrt(t).
Coefficients are RatFunc in the chart parameter and k2.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Mapping

from ..ratfunc import ONE, ZERO, RatFunc, rsum, sym

Key = tuple  # (Fraction exponent of t, int power of w)


@dataclass(frozen=True)
class Chart:
    """Where the turning-point variable sits: S = t - base."""

    name: str
    base: RatFunc
    param: str
    #: Mathieu-limit image of the chart parameter (k2 -> 0 as well)
    mathieu_image: RatFunc
    #: the (2 omega + 1)-type weight used by the minimization step
    weight: RatFunc


def _charts():
    om, omt, w = sym("omega"), sym("omegat"), sym("w")
    return {
        "omega": Chart("omega", om, "omega", (w - 1) / 2, 2 * om + 1),
        "omega_tilde": Chart("omega_tilde", omt - 1, "omegat", (w + 1) / 2, 2 * omt - 1),
    }


CHARTS = _charts()


@lru_cache(maxsize=None)
def _poly_in_t(chart_name: str):
    """P(S) and P'(S) as {t-power: coeff} with S = t - base."""
    base = CHARTS[chart_name].base
    k2 = sym("k2")
    # P(S) = S - (1 + k2) S^2 + k2 S^3 ;  P'(S) = 1 - 2 (1 + k2) S + 3 k2 S^2
    s_pows = [{0: ONE}]
    for _ in range(3):
        prev = s_pows[-1]
        nxt: dict[int, RatFunc] = {}
        for e, c in prev.items():
            nxt[e + 1] = nxt.get(e + 1, ZERO) + c
            nxt[e] = nxt.get(e, ZERO) - c * base
        s_pows.append(nxt)

    def combine(weights):
        out: dict[int, RatFunc] = {}
        for power, wgt in weights:
            for e, c in s_pows[power].items():
                out[e] = out.get(e, ZERO) + c * wgt
        return {Fraction(e): c for e, c in out.items() if not c.is_zero()}

    P = combine([(1, ONE), (2, -(1 + k2)), (3, k2)])
    dP = combine([(0, ONE), (1, -2 * (1 + k2)), (2, 3 * k2)])
    return P, dP


class EllipticIntegrand:
    """Immutable element of the differential ring over a chart."""

    __slots__ = ("chart", "terms")

    def __init__(self, terms: Mapping[Key, RatFunc] | None = None, chart: str = "omega"):
        clean = {}
        for (j, b), c in (terms or {}).items():
            c = RatFunc.coerce(c)
            if not c.is_zero():
                clean[(Fraction(j), int(b))] = c
        object.__setattr__(self, "chart", chart)
        object.__setattr__(self, "terms", dict(sorted(clean.items())))

    def __setattr__(self, k, v):
        raise AttributeError("EllipticIntegrand is immutable")

    @classmethod
    def t_power(cls, j, coeff=1, chart: str = "omega", w_power: int = 0) -> "EllipticIntegrand":
        return cls({(Fraction(j), w_power): RatFunc.coerce(coeff)}, chart)

    def is_zero(self) -> bool:
        return not self.terms

    def _same(self, other: "EllipticIntegrand"):
        if self.chart != other.chart:
            raise ValueError("integrands live on different charts")

    def __add__(self, other):
        self._same(other)
        buckets: dict[Key, list] = {k: [v] for k, v in self.terms.items()}
        for k, v in other.terms.items():
            buckets.setdefault(k, []).append(v)
        return EllipticIntegrand({k: rsum(v) for k, v in buckets.items()}, self.chart)

    def __neg__(self):
        return EllipticIntegrand({k: -v for k, v in self.terms.items()}, self.chart)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "EllipticIntegrand":
        c = RatFunc.coerce(c)
        return EllipticIntegrand({k: v * c for k, v in self.terms.items()}, self.chart)

    def __mul__(self, other):
        if not isinstance(other, EllipticIntegrand):
            return self.scale(other)
        self._same(other)
        P, _ = _poly_in_t(self.chart)
        buckets: dict[Key, list] = {}
        for (ja, ba), ca in self.terms.items():
            for (jb, bb), cb in other.terms.items():
                c = ca * cb
                if ba + bb == 2:
                    for e, pc in P.items():
                        buckets.setdefault((ja + jb + e, 0), []).append(c * pc)
                else:
                    buckets.setdefault((ja + jb, ba + bb), []).append(c)
        return EllipticIntegrand({k: rsum(v) for k, v in buckets.items()}, self.chart)

    __rmul__ = __mul__

    def d(self) -> "EllipticIntegrand":
        """Derivative d/dX."""
        P, dP = _poly_in_t(self.chart)
        buckets: dict[Key, list] = {}
        for (j, b), c in self.terms.items():
            if b == 0:
                if j != 0:
                    buckets.setdefault((j - 1, 1), []).append(c * (2 * j))
            else:
                if j != 0:
                    for e, pc in P.items():
                        buckets.setdefault((j - 1 + e, 0), []).append(c * pc * (2 * j))
                for e, pc in dP.items():
                    buckets.setdefault((j + e, 0), []).append(c * pc)
        return EllipticIntegrand({k: rsum(v) for k, v in buckets.items()}, self.chart)

    def w_parts(self):
        """(A, B) with self = A + B w, each as {t-exponent: coeff}."""
        A = {j: c for (j, b), c in self.terms.items() if b == 0}
        B = {j: c for (j, b), c in self.terms.items() if b == 1}
        return A, B

    def lowest(self, w_power: int = 0):
        exps = [j for (j, b) in self.terms if b == w_power]
        return min(exps) if exps else None

    def coefficient(self, j, w_power: int = 0) -> RatFunc:
        return self.terms.get((Fraction(j), w_power), ZERO)

    def subs(self, mapping) -> "EllipticIntegrand":
        return EllipticIntegrand({k: v.subs(mapping) for k, v in self.terms.items()}, self.chart)

    def __eq__(self, other):
        return isinstance(other, EllipticIntegrand) and self.chart == other.chart and self.terms == other.terms

    def __hash__(self):
        return hash((self.chart, tuple(self.terms.items())))

    def __repr__(self):
        parts = []
        for (j, b), c in self.terms.items():
            parts.append(f"({c})*t^({j})" + ("*w" if b else ""))
        return "EllipticIntegrand[" + (" + ".join(parts) or "0") + "]"

    def numerator_in_S(self, shift_exp):
        """Multiply by t^shift_exp and return {(S-power, w-power): coeff};
        used to confirm the polynomial-numerator structure."""
        base = CHARTS[self.chart].base
        out: dict[tuple[int, int], RatFunc] = {}
        for (j, b), c in self.terms.items():
            e = j + shift_exp
            if e.denominator != 1 or e < 0:
                raise ValueError("shift does not clear the denominator")
            # t^e = (S + base)^e
            from math import comb

            for i in range(int(e) + 1):
                key = (i, b)
                out[key] = out.get(key, ZERO) + c * comb(int(e), i) * base ** (int(e) - i)
        return {k: v for k, v in out.items() if not v.is_zero()}
