"""Exact rational functions over the Gaussian rationals.

Numerators and denominators are sparse multivariate polynomials with
rational coefficients (backed by FLINT).  The imaginary unit is the
generator ``I`` and is reduced with ``I**2 == -1``; denominators are kept
free of ``I`` by multiplying through with the conjugate, so the reduced
form is canonical and equality is structural.
"""

from __future__ import annotations

from fractions import Fraction
from functools import reduce
from numbers import Rational
from typing import Iterable, Mapping, Union

import flint

from .errors import AlphabetError, PoleHit

#: Declared symbol alphabet.  ``nn1`` stands for n(n-1), ``k2`` for k^2,
#: ``kp`` for the complementary modulus k', ``omegat`` for the dyonic
#: chart variable; ``K``/``E`` are the complete elliptic integrals and ``e``
#: their ratio E/K.  ``X`` is a scratch symbol for internal expansions.
ALPHABET: tuple[str, ...] = (
    "a", "m", "eps1", "eps2", "nu", "n", "nn1", "mu", "h", "k2", "kp",
    "kappa", "omega", "omegat", "w", "K", "E", "e", "X", "I",
)
_INDEX = {name: i for i, name in enumerate(ALPHABET)}
_I = _INDEX["I"]
_NVARS = len(ALPHABET)

_CTX = flint.fmpq_mpoly_ctx.get(ALPHABET, "lex")
_GENS = _CTX.gens()
_ZERO = _CTX.from_dict({})
_ONE = _CTX.from_dict({(0,) * _NVARS: 1})

Scalar = Union[int, Fraction, Rational]


def _const_poly(c) -> flint.fmpq_mpoly:
    if isinstance(c, Fraction):
        c = flint.fmpq(c.numerator, c.denominator)
    if c == 0:
        return _ZERO
    return _CTX.from_dict({(0,) * _NVARS: c})


def _reduce_i(p: flint.fmpq_mpoly) -> flint.fmpq_mpoly:
    if p.degrees()[_I] < 2:
        return p
    out = {}
    for mon, c in p.to_dict().items():
        e = mon[_I]
        sign = -1 if (e // 2) % 2 else 1
        key = mon[:_I] + (e % 2,) + mon[_I + 1:]
        out[key] = out.get(key, 0) + sign * c
    return _CTX.from_dict({k: v for k, v in out.items() if v != 0})


def _split_i(p: flint.fmpq_mpoly):
    """Return (re, im) with p = re + I*im; p must already be reduced."""
    if p.degrees()[_I] == 0:
        return p, _ZERO
    re, im = {}, {}
    for mon, c in p.to_dict().items():
        key = mon[:_I] + (0,) + mon[_I + 1:]
        (im if mon[_I] else re)[key] = c
    return _CTX.from_dict(re), _CTX.from_dict(im)


def _conj_poly(p: flint.fmpq_mpoly) -> flint.fmpq_mpoly:
    re, im = _split_i(p)
    if im.is_zero():
        return p
    return re - _GENS[_I] * im


class RatFunc:
    """Immutable exact rational function in the declared alphabet."""

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num=0, den=None, *, _reduced: bool = False):
        if not isinstance(num, flint.fmpq_mpoly):
            num = _const_poly(num)
        if den is None:
            den = _ONE
        elif not isinstance(den, flint.fmpq_mpoly):
            den = _const_poly(den)
        if not _reduced:
            num, den = self._normalize(num, den)
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, key, value):
        raise AttributeError("RatFunc is immutable")

    @staticmethod
    def _normalize(num, den):
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        num = _reduce_i(num)
        den = _reduce_i(den)
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        if num.is_zero():
            return _ZERO, _ONE
        dr, di = _split_i(den)
        if not di.is_zero():
            conj = dr - _GENS[_I] * di
            num = _reduce_i(num * conj)
            den = dr * dr + di * di
        if not den.is_constant():
            g = num.gcd(den)
            if not g.is_one():
                num = num / g
                den = den / g
        lc = den.leading_coefficient()
        if lc != 1:
            num = num / lc
            den = den / lc
        return num, den

    # construction helpers -------------------------------------------------
    @classmethod
    def symbol(cls, name: str) -> "RatFunc":
        try:
            return cls(_GENS[_INDEX[name]], _ONE, _reduced=True)
        except KeyError:
            raise AlphabetError(f"symbol {name!r} is not in the alphabet") from None

    @classmethod
    def coerce(cls, x) -> "RatFunc":
        if isinstance(x, RatFunc):
            return x
        if isinstance(x, (int, Fraction, flint.fmpq)):
            return cls(x)
        if isinstance(x, complex):
            raise TypeError("floating point values are not allowed in RatFunc")
        if isinstance(x, Rational):
            return cls(Fraction(x.numerator, x.denominator))
        raise TypeError(f"cannot coerce {type(x).__name__} to RatFunc")

    # arithmetic -----------------------------------------------------------
    def __add__(self, other):
        try:
            o = RatFunc.coerce(other)
        except TypeError:
            return NotImplemented
        if o.num.is_zero():
            return self
        if self.num.is_zero():
            return o
        if self.den == o.den:
            return RatFunc(self.num + o.num, self.den)
        return RatFunc(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(-self.num, self.den, _reduced=True)

    def __sub__(self, other):
        try:
            o = RatFunc.coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return RatFunc.coerce(other) - self

    def __mul__(self, other):
        try:
            o = RatFunc.coerce(other)
        except TypeError:
            return NotImplemented
        if self.num.is_zero() or o.num.is_zero():
            return RatFunc()
        if o.den.is_one() and o.num.is_constant():
            return RatFunc(self.num * o.num, self.den, _reduced=True)
        if self.den.is_one() and self.num.is_constant():
            return RatFunc(o.num * self.num, o.den, _reduced=True)
        return RatFunc(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        try:
            o = RatFunc.coerce(other)
        except TypeError:
            return NotImplemented
        if o.num.is_zero():
            raise ZeroDivisionError("division by the zero rational function")
        return RatFunc(self.num * o.den, self.den * o.num)

    def __rtruediv__(self, other):
        return RatFunc.coerce(other) / self

    def __pow__(self, e: int):
        if not isinstance(e, int):
            return NotImplemented
        if e >= 0:
            clean = not self.num.degrees()[_I]
            return RatFunc(self.num ** e, self.den ** e, _reduced=clean)
        return RatFunc(self.den ** (-e), self.num ** (-e))

    def inverse(self) -> "RatFunc":
        return RatFunc(1) / self

    # comparisons ----------------------------------------------------------
    def __eq__(self, other):
        try:
            o = RatFunc.coerce(other)
        except TypeError:
            return NotImplemented
        return self.num == o.num and self.den == o.den

    def __hash__(self):
        h = self._hash
        if h is None:
            h = hash((str(self.num), str(self.den)))
            object.__setattr__(self, "_hash", h)
        return h

    def __bool__(self):
        return not self.num.is_zero()

    # queries --------------------------------------------------------------
    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_constant(self) -> bool:
        return self.num.is_constant() and self.den.is_constant()

    def is_polynomial(self) -> bool:
        return self.den.is_constant()

    def constant_value(self) -> Fraction:
        """Value of a rational constant; raises if symbols or I occur."""
        if not self.is_constant():
            raise ValueError(f"{self} is not constant")
        c = self.num.leading_coefficient() if not self.num.is_zero() else 0
        c = flint.fmpq(c) / self.den.leading_coefficient()
        return Fraction(int(c.p), int(c.q))

    def symbols(self) -> set[str]:
        used = set()
        for p in (self.num, self.den):
            for i, d in enumerate(p.degrees()):
                if d:
                    used.add(ALPHABET[i])
        return used

    def degree(self, name: str) -> tuple[int, int]:
        """Degrees of numerator and denominator in ``name``."""
        i = _INDEX[name]
        return self.num.degrees()[i], self.den.degrees()[i]

    def poly_coeffs(self, name: str) -> dict[int, "RatFunc"]:
        """Coefficients of ``name``-powers, for a rational function whose
        denominator does not involve ``name``."""
        i = _INDEX[name]
        if self.den.degrees()[i]:
            raise ValueError(f"denominator depends on {name}")
        return {e: RatFunc(c, self.den) for e, c in _collect(self.num, i).items()}

    def numer(self) -> "RatFunc":
        return RatFunc(self.num, _ONE, _reduced=True)

    def denom(self) -> "RatFunc":
        return RatFunc(self.den, _ONE, _reduced=True)

    # transformations ------------------------------------------------------
    def conjugate_i(self) -> "RatFunc":
        """Apply I -> -I (formal complex conjugation of the unit only)."""
        return RatFunc(_conj_poly(self.num), self.den)

    def subs(self, mapping: Mapping[str, object]) -> "RatFunc":
        """Simultaneous substitution of symbols by rational functions.

        Cancellation happens before evaluation, so removable singularities
        (e.g. eps2/eps2 at eps2 = 0) are harmless; a denominator that
        vanishes identically raises :class:`PoleHit`.
        """
        if not mapping:
            return self
        for name in mapping:
            if name not in _INDEX:
                raise AlphabetError(f"symbol {name!r} is not in the alphabet")
        # simultaneous: rename targets to fresh polynomial images first
        reps = {name: RatFunc.coerce(v) for name, v in mapping.items()}
        num, den = self.num, self.den
        if all(r.is_constant() and r.is_polynomial() and not r.num.degrees()[_I]
               for r in reps.values()):
            vals = {name: _fmpq(r.constant_value()) for name, r in reps.items()}
            n2, d2 = num.subs(vals), den.subs(vals)
            if d2.is_zero():
                raise PoleHit(f"denominator vanishes under {mapping}")
            return RatFunc(n2, d2)
        # common denominator Q of all replacements: x_i -> P_i / Q
        qden = reduce(_lcm, (r.den for r in reps.values()), _ONE)
        images = list(_GENS)
        for name, r in reps.items():
            images[_INDEX[name]] = r.num * (qden / r.den)
        idx = [_INDEX[n] for n in reps]
        dn = _homog_degree(num, idx)
        dd = _homog_degree(den, idx)
        n2 = _homogenize(num, idx, dn).compose(*images, qden)
        d2 = _homogenize(den, idx, dd).compose(*images, qden)
        # value = n2 / Q^dn  /  (d2 / Q^dd)
        if dd >= dn:
            n2 = n2 * qden ** (dd - dn)
        else:
            d2 = d2 * qden ** (dn - dd)
        d2r = _reduce_i(d2)
        if d2r.is_zero():
            raise PoleHit(f"denominator vanishes under {mapping}")
        return RatFunc(n2, d2)

    def diff(self, name: str) -> "RatFunc":
        i = _INDEX[name]
        dn = self.num.derivative(i)
        dd = self.den.derivative(i)
        if dd.is_zero():
            return RatFunc(dn, self.den)
        return RatFunc(dn * self.den - self.num * dd, self.den * self.den)

    def evaluate(self, values: Mapping[str, complex]) -> complex:
        """Floating-point evaluation (used only by the numeric oracle)."""
        vals = dict(values)
        vals.setdefault("I", 1j)
        return _eval_poly(self.num, vals) / _eval_poly(self.den, vals)

    # rendering ------------------------------------------------------------
    def __repr__(self):
        return f"RatFunc({self})"

    def __str__(self):
        n = poly_str(self.num)
        if self.den.is_one():
            return n
        d = poly_str(self.den)
        return f"({n})/({d})"

    def num_str(self) -> str:
        return poly_str(self.num)

    def den_str(self) -> str:
        return poly_str(self.den)

    def latex(self) -> str:
        n = poly_str(self.num, latex=True)
        if self.den.is_one():
            return n
        return r"\frac{%s}{%s}" % (n, poly_str(self.den, latex=True))


def _fmpq(x: Fraction):
    return flint.fmpq(x.numerator, x.denominator)


def _lcm(a, b):
    if a.is_constant():
        return b
    if b.is_constant():
        return a
    return a * (b / a.gcd(b))


def _collect(p, i) -> dict[int, flint.fmpq_mpoly]:
    groups: dict[int, dict] = {}
    for mon, c in p.to_dict().items():
        e = int(mon[i])
        key = mon[:i] + (0,) + mon[i + 1:]
        groups.setdefault(e, {})[key] = c
    return {e: _CTX.from_dict(d) for e, d in groups.items()}


_HCTX = flint.fmpq_mpoly_ctx.get(ALPHABET + ("_h",), "lex")


def _homog_degree(p, idx) -> int:
    best = 0
    for mon in p.to_dict():
        best = max(best, sum(mon[i] for i in idx))
    return best


def _homogenize(p, idx, deg):
    """Lift p into a context with an extra variable so that the variables
    in ``idx`` are jointly homogenised to degree ``deg``."""
    out = {}
    for mon, c in p.to_dict().items():
        out[mon + (deg - sum(mon[i] for i in idx),)] = c
    return _HCTX.from_dict(out)


def _eval_poly(p, vals) -> complex:
    total = 0j
    for mon, c in p.to_dict().items():
        term = complex(float(flint.fmpq(c).p) / float(flint.fmpq(c).q))
        for i, e in enumerate(mon):
            if e:
                name = ALPHABET[i]
                if name not in vals:
                    raise KeyError(f"no numeric value for symbol {name!r}")
                term *= complex(vals[name]) ** int(e)
        total += term
    return total


def _coeff_str(c, latex=False) -> str:
    c = flint.fmpq(c)
    if c.q == 1:
        return str(c.p)
    if latex:
        return r"\frac{%d}{%d}" % (c.p, c.q)
    return f"{c.p}/{c.q}"


def poly_str(p, latex: bool = False) -> str:
    """Canonical rendering: monomials sorted by exponent vector, descending."""
    if p.is_zero():
        return "0"
    parts = []
    for mon, c in sorted(p.to_dict().items(), key=lambda kv: kv[0], reverse=True):
        factors = []
        for i, e in enumerate(mon):
            if e:
                name = ALPHABET[i]
                if latex:
                    name = _LATEX_NAMES.get(name, name)
                    factors.append(name if e == 1 else f"{name}^{{{e}}}")
                else:
                    factors.append(name if e == 1 else f"{name}^{e}")
        c = flint.fmpq(c)
        neg = c < 0
        a = -c if neg else c
        cs = _coeff_str(a, latex)
        sep = " " if latex else "*"
        if not factors:
            body = cs
        elif a == 1:
            body = sep.join(factors)
        else:
            body = cs + sep + sep.join(factors)
        parts.append(("-" if neg else "+", body))
    s = ("-" if parts[0][0] == "-" else "") + parts[0][1]
    for sign, body in parts[1:]:
        s += f" {sign} {body}"
    return s


_LATEX_NAMES = {
    "eps1": r"\epsilon_1", "eps2": r"\epsilon_2", "nu": r"\nu", "mu": r"\mu",
    "k2": "k^2", "kp": "k'", "kappa": r"\kappa", "omega": r"\omega",
    "omegat": r"\tilde\omega", "nn1": "n(n-1)", "I": "i",
}


def sym(name: str) -> RatFunc:
    return RatFunc.symbol(name)


def symbols(names: str) -> tuple[RatFunc, ...]:
    return tuple(sym(n) for n in names.replace(",", " ").split())


I = sym("I")
ZERO = RatFunc(0)
ONE = RatFunc(1)


def as_ratfunc(x) -> RatFunc:
    return RatFunc.coerce(x)


def rsum(items: Iterable[RatFunc]) -> RatFunc:
    """Sum of many rational functions, grouping equal denominators."""
    by_den: dict = {}
    for r in items:
        r = RatFunc.coerce(r)
        if r.is_zero():
            continue
        key = str(r.den)
        if key in by_den:
            n, d = by_den[key]
            by_den[key] = (n + r.num, d)
        else:
            by_den[key] = (r.num, r.den)
    total = ZERO
    for n, d in by_den.values():
        total = total + RatFunc(n, d)
    return total
