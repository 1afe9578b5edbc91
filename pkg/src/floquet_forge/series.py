"""Truncated Puiseux series with exact rational-function coefficients.

A series in the variable ``x`` stores finitely many terms ``c_e x^e`` with
exponents on the lattice (1/D)Z, D in {1, 2, 4, 8}, together with a
precision ``prec``: every term with exponent below ``prec`` is exact and
the remainder is O(x^prec).  ``prec=None`` marks an exact (finite) series.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm
from typing import Callable, Iterable, Mapping, Optional, Union

from .errors import (
    DivergentComposition,
    DivisionByZeroSeries,
    LatticeOverflow,
    NonInvertibleLeadingTerm,
    NotInvertible,
    VariableMismatch,
)
from .ratfunc import ALPHABET, ONE, ZERO, RatFunc, _collect, _INDEX

ALLOWED_DENOMINATORS = (1, 2, 4, 8)

Number = Union[int, Fraction]
Coeff = Union[RatFunc, int, Fraction]


def _frac(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


def _min_prec(*ps):
    vals = [p for p in ps if p is not None]
    return min(vals) if vals else None


@dataclass(frozen=True)
class SeriesContext:
    """Alphabet and default truncation orders for series that are exact
    but must be expanded (inverses, fractional powers, reversion)."""

    alphabet: tuple[str, ...] = ALPHABET
    orders: Mapping[str, Number] = field(default_factory=dict)
    default_order: Number = 8

    def order_for(self, var: str) -> Fraction:
        return _frac(self.orders.get(var, self.default_order))

    def check(self, s: "PuiseuxSeries") -> None:
        from .errors import AlphabetError

        for c in s.terms.values():
            extra = c.symbols() - set(self.alphabet)
            if extra:
                raise AlphabetError(f"symbols {sorted(extra)} outside the context alphabet")


DEFAULT_CONTEXT = SeriesContext()


class PuiseuxSeries:
    """Immutable truncated Puiseux series; see the module docstring."""

    __slots__ = ("var", "terms", "prec")

    def __init__(self, var: str, terms: Mapping[Number, Coeff] | None = None,
                 prec: Optional[Number] = None):
        prec = None if prec is None else _frac(prec)
        clean: dict[Fraction, RatFunc] = {}
        for e, c in (terms or {}).items():
            e = _frac(e)
            if prec is not None and e >= prec:
                continue
            c = RatFunc.coerce(c)
            if c.is_zero():
                continue
            clean[e] = clean[e] + c if e in clean else c
            if clean[e].is_zero():
                del clean[e]
        object.__setattr__(self, "var", var)
        object.__setattr__(self, "terms", dict(sorted(clean.items())))
        object.__setattr__(self, "prec", prec)
        den = self.exponent_denominator
        if den not in ALLOWED_DENOMINATORS:
            raise LatticeOverflow(f"exponent denominator {den} is not in {ALLOWED_DENOMINATORS}")

    def __setattr__(self, key, value):
        raise AttributeError("PuiseuxSeries is immutable")

    # constructors ---------------------------------------------------------
    @classmethod
    def monomial(cls, var: str, exponent: Number = 1, coeff: Coeff = 1,
                 prec: Optional[Number] = None) -> "PuiseuxSeries":
        return cls(var, {exponent: coeff}, prec)

    @classmethod
    def constant(cls, var: str, c: Coeff, prec: Optional[Number] = None) -> "PuiseuxSeries":
        return cls(var, {0: c}, prec)

    @classmethod
    def from_coeffs(cls, var: str, coeffs: Iterable[Coeff], step: Number = 1,
                    start: Number = 0, prec: Optional[Number] = None) -> "PuiseuxSeries":
        step, start = _frac(step), _frac(start)
        return cls(var, {start + i * step: c for i, c in enumerate(coeffs)}, prec)

    # basic queries --------------------------------------------------------
    @property
    def exponent_denominator(self) -> int:
        d = 1
        for e in self.terms:
            d = lcm(d, e.denominator)
        if self.prec is not None:
            d = lcm(d, self.prec.denominator)
        return d

    @property
    def truncation_order(self) -> Optional[Fraction]:
        return self.prec

    @property
    def valuation(self) -> Optional[Fraction]:
        """Lowest stored exponent; for a zero series its precision."""
        if self.terms:
            return next(iter(self.terms))
        return self.prec

    def is_exact(self) -> bool:
        return self.prec is None

    def is_zero(self) -> bool:
        return not self.terms

    def coefficient(self, e: Number) -> RatFunc:
        e = _frac(e)
        if self.prec is not None and e >= self.prec:
            raise ValueError(f"coefficient of {self.var}^{e} is beyond the truncation order {self.prec}")
        return self.terms.get(e, ZERO)

    def __getitem__(self, e: Number) -> RatFunc:
        return self.coefficient(e)

    def items(self):
        return self.terms.items()

    def truncate(self, prec: Number) -> "PuiseuxSeries":
        prec = _frac(prec)
        return PuiseuxSeries(self.var, self.terms, _min_prec(prec, self.prec))

    def with_variable(self, var: str) -> "PuiseuxSeries":
        return PuiseuxSeries(var, self.terms, self.prec)

    def rescale(self, factor: Number, var: Optional[str] = None) -> "PuiseuxSeries":
        """Re-express in the variable x^(1/factor): exponents are multiplied
        by ``factor`` (e.g. factor 2 turns a series in q into one in q^(1/2))."""
        f = _frac(factor)
        if f <= 0:
            raise ValueError("rescale factor must be positive")
        return PuiseuxSeries(var or self.var, {e * f: c for e, c in self.terms.items()},
                             None if self.prec is None else self.prec * f)

    def map_coeffs(self, f: Callable[[RatFunc], Coeff]) -> "PuiseuxSeries":
        return PuiseuxSeries(self.var, {e: f(c) for e, c in self.terms.items()}, self.prec)

    def shift(self, k: Number) -> "PuiseuxSeries":
        """Multiply by x^k."""
        k = _frac(k)
        return PuiseuxSeries(self.var, {e + k: c for e, c in self.terms.items()},
                             None if self.prec is None else self.prec + k)

    # arithmetic -----------------------------------------------------------
    def _check(self, other: "PuiseuxSeries") -> None:
        if self.var != other.var:
            raise VariableMismatch(f"series in {self.var!r} combined with series in {other.var!r}")

    def _coerce(self, other) -> "PuiseuxSeries":
        if isinstance(other, PuiseuxSeries):
            self._check(other)
            return other
        return PuiseuxSeries(self.var, {0: RatFunc.coerce(other)})

    def __add__(self, other):
        try:
            o = self._coerce(other)
        except TypeError:
            return NotImplemented
        terms = dict(self.terms)
        for e, c in o.terms.items():
            terms[e] = terms[e] + c if e in terms else c
        return PuiseuxSeries(self.var, terms, _min_prec(self.prec, o.prec))

    __radd__ = __add__

    def __neg__(self):
        return PuiseuxSeries(self.var, {e: -c for e, c in self.terms.items()}, self.prec)

    def __sub__(self, other):
        try:
            o = self._coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, PuiseuxSeries):
            try:
                c = RatFunc.coerce(other)
            except TypeError:
                return NotImplemented
            if c.is_zero():
                return PuiseuxSeries(self.var, {}, self.prec)
            return PuiseuxSeries(self.var, {e: v * c for e, v in self.terms.items()}, self.prec)
        self._check(other)
        va, vb = self.valuation, other.valuation
        precs = []
        if self.prec is not None and vb is not None:
            precs.append(self.prec + vb)
        if other.prec is not None and va is not None:
            precs.append(other.prec + va)
        prec = min(precs) if precs else None
        if prec is None and (self.prec is not None or other.prec is not None):
            # one factor is an exact zero
            return PuiseuxSeries(self.var, {}, None)
        buckets: dict[Fraction, list[RatFunc]] = {}
        for ea, ca in self.terms.items():
            for eb, cb in other.terms.items():
                e = ea + eb
                if prec is not None and e >= prec:
                    continue
                buckets.setdefault(e, []).append(ca * cb)
        from .ratfunc import rsum

        return PuiseuxSeries(self.var, {e: rsum(cs) for e, cs in buckets.items()}, prec)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if not isinstance(other, PuiseuxSeries):
            c = RatFunc.coerce(other)
            return self * c.inverse()
        return series_arith(self, other, "/")

    def __rtruediv__(self, other):
        return self._coerce(other) / self

    def __pow__(self, r):
        return series_pow(self, r)

    def __eq__(self, other):
        if not isinstance(other, PuiseuxSeries):
            return NotImplemented
        return self.var == other.var and self.prec == other.prec and self.terms == other.terms

    def __hash__(self):
        return hash((self.var, self.prec, tuple(self.terms.items())))

    def agrees_with(self, other: "PuiseuxSeries", upto: Optional[Number] = None) -> bool:
        """Equality of all coefficients below ``upto`` (default: the common precision)."""
        self._check(other)
        bound = _min_prec(self.prec, other.prec, None if upto is None else _frac(upto))
        if upto is not None and bound is not None and bound < _frac(upto):
            return False
        diff = self - other
        return all(bound is not None and e >= bound for e in diff.terms)

    # evaluation & substitution --------------------------------------------
    def subs(self, mapping: Mapping[str, object]) -> "PuiseuxSeries":
        return self.map_coeffs(lambda c: c.subs(mapping))

    def evaluate(self, x: complex, values: Mapping[str, complex] | None = None) -> complex:
        values = values or {}
        total = 0j
        for e, c in self.terms.items():
            total += c.evaluate(values) * complex(x) ** float(e)
        return total

    # rendering ------------------------------------------------------------
    def to_dict(self) -> dict:
        return {
            "variable": self.var,
            "exponent_denominator": self.exponent_denominator,
            "terms": [
                {"exponent": _fstr(e), "coefficient": {"num": c.num_str(), "den": c.den_str()}}
                for e, c in self.terms.items()
            ],
            "truncation": "inf" if self.prec is None else _fstr(self.prec),
        }

    def to_json(self, **kw) -> str:
        return json.dumps(self.to_dict(), **kw)

    def to_text(self) -> str:
        v = f"({self.var})" if "^" in self.var else self.var
        if not self.terms:
            body = "0"
        else:
            parts = []
            for e, c in self.terms.items():
                mon = "" if e == 0 else (v if e == 1 else (f"{v}^{_estr(e)}" if e.denominator == 1 and e > 0 else f"{v}^({_estr(e)})"))
                cs = str(c)
                if mon and cs == "1":
                    parts.append(mon)
                elif mon and cs == "-1":
                    parts.append("-" + mon)
                else:
                    parts.append(f"({cs})" + (f"*{mon}" if mon else ""))
            body = " + ".join(parts)
        if self.prec is not None:
            body += f" + O({v}^({_estr(self.prec)}))"
        return body

    def to_latex(self) -> str:
        parts = []
        for e, c in self.terms.items():
            mon = "" if e == 0 else (self.var if e == 1 else f"{self.var}^{{{_estr(e)}}}")
            parts.append(r"\left(%s\right)%s" % (c.latex(), mon))
        body = " + ".join(parts) or "0"
        if self.prec is not None:
            body += r" + O(%s^{%s})" % (self.var, _estr(self.prec))
        return body

    def __repr__(self):
        return f"PuiseuxSeries[{self.var}]({self.to_text()})"


def _fstr(e: Fraction) -> str:
    return f"{e.numerator}/{e.denominator}"


def _estr(e: Fraction) -> str:
    return str(e.numerator) if e.denominator == 1 else f"{e.numerator}/{e.denominator}"


def as_series(x, var: str) -> PuiseuxSeries:
    if isinstance(x, PuiseuxSeries):
        return x
    return PuiseuxSeries.constant(var, x)


# ---------------------------------------------------------------------------
# core operations

def series_arith(a: PuiseuxSeries, b: PuiseuxSeries, op: str) -> PuiseuxSeries:
    """Binary arithmetic ``a op b`` for op in {+, -, *, /}."""
    a._check(b)
    if op == "+":
        return a + b
    if op == "-":
        return a - b
    if op in ("*", "×"):
        return a * b
    if op in ("/", "÷"):
        if b.is_zero():
            raise DivisionByZeroSeries("divisor vanishes to its truncation order")
        inv = series_pow(b, -1, prec=_rel_needed(a, b))
        return a * inv
    raise ValueError(f"unknown operator {op!r}")


def _rel_needed(a: PuiseuxSeries, b: PuiseuxSeries) -> Optional[Fraction]:
    """Precision to request for 1/b when b is exact and a has finite precision."""
    if b.prec is not None:
        return None
    va = a.valuation if a.valuation is not None else Fraction(0)
    if a.prec is not None:
        return a.prec - va - b.valuation
    return None


def _unit_part(s: PuiseuxSeries):
    """Split s = c x^v (1 + u) where u has positive valuation, on the step grid."""
    if s.is_zero():
        raise DivisionByZeroSeries("series vanishes to its truncation order")
    v = s.valuation
    c = s.terms[v]
    D = s.exponent_denominator
    step = Fraction(1, D)
    cinv = c.inverse()
    u = {int((e - v) / step): cc * cinv for e, cc in s.terms.items() if e != v}
    return c, v, step, u


def _miller_power(u: dict[int, RatFunc], alpha: Fraction, n_terms: int) -> list[RatFunc]:
    """Coefficients f_0..f_{n-1} of (1 + sum_k u_k t^k)^alpha (J. C. P. Miller)."""
    f = [ONE]
    if n_terms <= 0:
        return []
    ks = sorted(k for k in u if k >= 1)
    for n in range(1, n_terms):
        acc = []
        for k in ks:
            if k > n:
                break
            fk = f[n - k]
            if fk.is_zero():
                continue
            w = alpha * k - n + k
            if w:
                acc.append(u[k] * fk * w)
        from .ratfunc import rsum

        f.append(rsum(acc) / n if acc else ZERO)
    return f


def _root_coefficient(c: RatFunc, r: Fraction) -> RatFunc:
    if r.denominator == 1:
        return c ** int(r)
    q = r.denominator
    if q not in (2, 4, 8):
        raise NonInvertibleLeadingTerm(f"cannot take root of order {q}")
    num, den = c.num, c.den
    try:
        while q > 1:
            num, den = num.sqrt(), den.sqrt()
            q //= 2
    except Exception:
        raise NonInvertibleLeadingTerm(f"leading coefficient {c} has no exact root of order {r.denominator}") from None
    root = RatFunc(num, den)
    return root ** r.numerator


def series_pow(s: PuiseuxSeries, r, prec: Optional[Number] = None,
               ctx: SeriesContext = DEFAULT_CONTEXT) -> PuiseuxSeries:
    """s**r for exact rational r via the binomial series around the leading term.

    The result precision follows from the relative precision of ``s``; for
    an exact ``s`` with more than one term ``prec`` (or the context order)
    bounds the expansion.
    """
    r = _frac(r)
    if r == 0:
        return PuiseuxSeries.constant(s.var, 1, None if s.prec is None else (s.prec - s.valuation if s.terms else None))
    if s.is_zero():
        if r > 0:
            return PuiseuxSeries(s.var, {}, None if s.prec is None else s.prec * r)
        raise DivisionByZeroSeries("negative power of a series that vanishes to its truncation order")
    c, v, step, u = _unit_part(s)
    lead_exp = v * r
    if lead_exp.denominator not in ALLOWED_DENOMINATORS or lead_exp.denominator > 8:
        raise LatticeOverflow(f"exponent {lead_exp} leaves the lattice")
    lead = _root_coefficient(c, r)
    if not u:
        return PuiseuxSeries(s.var, {lead_exp: lead},
                             None if s.prec is None else (s.prec - v) + lead_exp)
    if r.denominator == 1 and r > 0 and s.prec is None and prec is None:
        out = PuiseuxSeries(s.var, {0: 1})
        for _ in range(int(r)):
            out = out * s
        return out
    rel = None if s.prec is None else s.prec - v
    if prec is not None:
        want = _frac(prec) - lead_exp
        rel = want if rel is None else min(rel, want)
    if rel is None:
        rel = ctx.order_for(s.var) - lead_exp
    n_terms = max(0, int(-(-rel // step)))  # ceil(rel/step)
    coeffs = _miller_power(u, r, n_terms)
    terms = {lead_exp + i * step: cf * lead for i, cf in enumerate(coeffs)}
    return PuiseuxSeries(s.var, terms, lead_exp + rel)


def series_compose(outer: PuiseuxSeries, inner: PuiseuxSeries,
                   prec: Optional[Number] = None) -> PuiseuxSeries:
    """Formal substitution outer(inner); the result is a series in inner's variable."""
    if outer.is_zero() and outer.prec is None:
        return PuiseuxSeries(inner.var, {})
    v_in = inner.valuation
    polynomial_outer = outer.prec is None and all(e.denominator == 1 and e >= 0 for e in outer.terms)
    if not polynomial_outer and (v_in is None or v_in <= 0):
        raise DivergentComposition("inner series must have positive valuation")
    precs = []
    if outer.prec is not None:
        precs.append(outer.prec * v_in)
    if prec is not None:
        precs.append(_frac(prec))
    target = min(precs) if precs else None
    if polynomial_outer and all(e >= 0 for e in outer.terms):
        # Horner evaluation over integer exponents
        top = int(max(outer.terms)) if outer.terms else 0
        acc = PuiseuxSeries(inner.var, {}, None)
        for k in range(top, -1, -1):
            acc = acc * inner + outer.terms.get(Fraction(k), ZERO)
            if target is not None:
                acc = acc.truncate(target)
        return acc if target is None else acc.truncate(target)
    D = outer.exponent_denominator
    base = series_pow(inner, Fraction(1, D), prec=target)
    inv_base = None
    result = PuiseuxSeries(inner.var, {}, target)
    powers = {0: PuiseuxSeries(inner.var, {0: 1})}

    def power(k: int) -> PuiseuxSeries:
        nonlocal inv_base
        if k in powers:
            return powers[k]
        if k > 0:
            p = power(k - 1) * base
        else:
            if inv_base is None:
                inv_base = series_pow(inner, Fraction(-1, D), prec=target)
            p = power(k + 1) * inv_base
        if target is not None:
            p = p.truncate(target)
        powers[k] = p
        return p

    for e, c in outer.terms.items():
        result = result + power(int(e * D)) * c
    return result


def series_reverse(s: PuiseuxSeries, new_var: str = "y",
                   prec: Optional[Number] = None) -> PuiseuxSeries:
    """Functional inverse by Lagrange inversion.

    ``s`` must have the shape c1*x^v + ... with all exponents multiples of
    v; the result expresses x^v as a series in ``new_var`` (the value of
    ``s``) with t(s(x)) = x^v to the available order.
    """
    if s.is_zero():
        raise NotInvertible("zero series")
    v = s.valuation
    if v <= 0:
        raise NotInvertible(f"valuation {v} is not positive")
    if any((e / v).denominator != 1 for e in s.terms):
        raise NotInvertible("exponents are not multiples of the leading exponent")
    norm = s.rescale(1 / v)  # now valuation 1, integer exponents
    if norm.prec is not None:
        # on the integer lattice, "exact below p" equals "exact below ceil(p)"
        norm = PuiseuxSeries(norm.var, norm.terms, -(-norm.prec // 1))
    c1 = norm.terms[Fraction(1)]
    if c1.is_zero():
        raise NotInvertible("vanishing linear term")
    if norm.prec is None:
        N = int(prec) if prec is not None else int(DEFAULT_CONTEXT.default_order)
    else:
        N = int(-(-norm.prec // 1))  # ceil
        if prec is not None:
            N = min(N, int(prec))
    # g(x) = s(x)/x = c1 (1 + u(x));  [y^n] t = (1/n) [x^{n-1}] g(x)^{-n}
    g = norm.shift(-1)
    _, _, _, u = _unit_part(g)
    terms = {}
    c1inv = c1.inverse()
    for n in range(1, N):
        coeffs = _miller_power(u, Fraction(-n), n)
        if len(coeffs) >= n:
            terms[n] = coeffs[n - 1] * (c1inv ** n) / n
    return PuiseuxSeries(new_var, terms, N)


def substitute(target, symbol: str, replacement):
    """Exact substitution of ``symbol`` in a RatFunc or in every series coefficient."""
    if isinstance(target, PuiseuxSeries):
        return target.subs({symbol: replacement})
    return RatFunc.coerce(target).subs({symbol: replacement})


def expand_ratfunc(r: RatFunc, symbol: str, prec: Number, var: Optional[str] = None) -> PuiseuxSeries:
    """Laurent expansion of a rational function in one of its symbols at 0."""
    var = var or symbol
    r = RatFunc.coerce(r)
    i = _INDEX[symbol]
    num = {e: RatFunc(p) for e, p in _collect(r.num, i).items()}
    den = {e: RatFunc(p) for e, p in _collect(r.den, i).items()}
    ns = PuiseuxSeries(var, num)
    ds = PuiseuxSeries(var, den)
    prec = _frac(prec)
    vd = ds.valuation
    inv = series_pow(ds, -1, prec=prec - (ns.valuation if ns.terms else 0) - 0 + 0)
    out = ns * inv
    # ns is exact; the inverse carries the precision
    return out.truncate(prec) if out.prec is None or out.prec > prec else out


def substitute_series(r: RatFunc, symbol: str, value: PuiseuxSeries,
                      prec: Optional[Number] = None) -> PuiseuxSeries:
    """Substitute a series for a symbol of a rational function.

    The result is a series in ``value.var`` whose coefficients are the
    remaining rational-function parts.
    """
    r = RatFunc.coerce(r)
    i = _INDEX[symbol]
    var = value.var

    def poly_at(poly) -> PuiseuxSeries:
        groups = _collect(poly, i)
        outer = PuiseuxSeries("X", {e: RatFunc(p) for e, p in groups.items()})
        if not outer.terms:
            return PuiseuxSeries(var, {})
        top = max(outer.terms)
        acc = PuiseuxSeries(var, {}, None)
        for k in range(int(top), -1, -1):
            acc = acc * value + outer.terms.get(Fraction(k), ZERO)
            if prec is not None:
                acc = acc.truncate(prec)
        return acc

    n = poly_at(r.num)
    if int(r.den.degrees()[i]) == 0:
        return n * RatFunc(1, r.den)
    d = poly_at(r.den)
    return series_arith(n, d, "/") if prec is None else series_arith(n, d.truncate(prec) if d.prec is None else d, "/").truncate(prec)


def ratfunc_as_series(r: RatFunc, var_symbol: str, prec: Number,
                      series_for: Mapping[str, PuiseuxSeries] | None = None,
                      var: Optional[str] = None) -> PuiseuxSeries:
    """Expand a rational function as a Laurent series in one of its symbols.

    ``var_symbol`` becomes the series variable; symbols listed in
    ``series_for`` are replaced by the given series (in the same variable);
    every other symbol stays in the coefficients.  Poles at the origin are
    allowed and cancel where the function is regular.
    """
    from .ratfunc import _CTX, _NVARS

    var = var or var_symbol
    series_for = dict(series_for or {})
    prec = _frac(prec)
    vi = _INDEX[var_symbol]
    sidx = {_INDEX[s]: ser for s, ser in series_for.items()}
    power_cache: dict[tuple[int, int], PuiseuxSeries] = {}

    def spow(i: int, e: int, p: Fraction) -> PuiseuxSeries:
        key = (i, e)
        if key not in power_cache or (power_cache[key].prec is not None and power_cache[key].prec < p):
            base = sidx[i].truncate(p) if sidx[i].prec is None or sidx[i].prec > p else sidx[i]
            acc = PuiseuxSeries(var, {0: 1})
            for _ in range(e):
                acc = (acc * base).truncate(p)
            power_cache[key] = acc
        return power_cache[key]

    def poly_series(poly, p: Fraction) -> PuiseuxSeries:
        if not any(int(poly.degrees()[i]) for i in sidx):
            exact = {e: RatFunc(c) for e, c in _collect(poly, vi).items()}
            return PuiseuxSeries(var, exact)
        groups: dict[tuple, dict] = {}
        for mon, c in poly.to_dict().items():
            split = tuple((i, int(mon[i])) for i in sidx if mon[i])
            rest = list(mon)
            ve = int(rest[vi])
            rest[vi] = 0
            for i in sidx:
                rest[i] = 0
            groups.setdefault((ve, split), {})[tuple(rest)] = c
        acc = PuiseuxSeries(var, {}, p)
        for (ve, split), d in groups.items():
            coeff = RatFunc(_CTX.from_dict(d))
            term = PuiseuxSeries(var, {ve: coeff}, p)
            for i, e in split:
                term = term * spow(i, e, p - ve)
            acc = acc + term
        return acc

    den_probe = poly_series(r.den, prec + 16)
    if den_probe.is_zero():
        raise DivisionByZeroSeries("denominator vanishes to the probed order")
    vd = den_probe.valuation
    num_probe = poly_series(r.num, prec + 16)
    vn = num_probe.valuation if not num_probe.is_zero() else prec
    work = prec + 2 * max(vd, 0) + max(-vn, 0)
    num = poly_series(r.num, work)
    den = poly_series(r.den, work)
    return series_arith(num, den, "/").truncate(prec)
