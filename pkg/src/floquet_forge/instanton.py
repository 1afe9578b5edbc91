"""Young diagrams, Nekrasov partition functions and the eps2 -> 0 prepotential.

Conventions.  Coulomb parameters a1 = -a2 = a (so a12 = 2a).  For a box
s = (i, j) of Y_alpha the weight against Y_beta is

    E(s) = a_alpha - a_beta - eps1 * L_{Y_beta}(s) + eps2 * (A_{Y_alpha}(s) + 1)

with leg L_Y(i, j) = Y'_j - i and arm A_Y(i, j) = Y_i - j (both may be
negative when s lies outside Y).  Writing eps = eps1 + eps2, every ordered
pair (alpha, beta) and box s of Y_alpha contributes 1/(E (eps - E)) for the
vector multiplet, times (E - m)(eps - E - m) for the adjoint hypermultiplet.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterator, Sequence

from .errors import PoleHit
from .modular import e_roots, eisenstein_e2
from .ratfunc import ONE, ZERO, RatFunc, rsum, sym
from .series import PuiseuxSeries

QIN = "q"

_a, _m, _e1, _e2 = sym("a"), sym("m"), sym("eps1"), sym("eps2")
_nu, _n, _nn1, _X = sym("nu"), sym("n"), sym("nn1"), sym("X")


@dataclass(frozen=True)
class Partition:
    """Weakly decreasing tuple of positive rows."""

    rows: tuple[int, ...] = ()

    def __post_init__(self):
        r = tuple(self.rows)
        if any(x <= 0 for x in r) or any(r[i] < r[i + 1] for i in range(len(r) - 1)):
            raise ValueError(f"{r} is not a partition")
        object.__setattr__(self, "rows", r)

    @property
    def size(self) -> int:
        return sum(self.rows)

    def row(self, i: int) -> int:
        """Length of row i (1-based); 0 past the last row."""
        return self.rows[i - 1] if 1 <= i <= len(self.rows) else 0

    def column(self, j: int) -> int:
        """Length of column j (1-based)."""
        return sum(1 for r in self.rows if r >= j)

    def arm(self, i: int, j: int) -> int:
        return self.row(i) - j

    def leg(self, i: int, j: int) -> int:
        return self.column(j) - i

    def boxes(self) -> Iterator[tuple[int, int]]:
        for i, r in enumerate(self.rows, start=1):
            for j in range(1, r + 1):
                yield i, j

    def transpose(self) -> "Partition":
        return Partition(tuple(self.column(j) for j in range(1, (self.rows[0] if self.rows else 0) + 1)))

    def __len__(self):
        return len(self.rows)


@lru_cache(maxsize=None)
def partitions(n: int) -> tuple[Partition, ...]:
    """All partitions of n, largest parts first."""
    out: list[Partition] = []

    def rec(rest, cap, acc):
        if rest == 0:
            out.append(Partition(tuple(acc)))
            return
        for part in range(min(rest, cap), 0, -1):
            rec(rest - part, part, acc + [part])

    rec(n, n, [])
    return tuple(out)


def enumerate_partition_pairs(level: int) -> list[tuple[Partition, Partition]]:
    if level < 0:
        raise ValueError("level must be nonnegative")
    return [(y1, y2) for k in range(level + 1) for y1 in partitions(k) for y2 in partitions(level - k)]


def _weight(pair: Sequence[Partition], flavor: str) -> RatFunc:
    avals = (_a, -_a)
    eps = _e1 + _e2
    num, den = [], []
    for al in range(2):
        for be in range(2):
            ya, yb = pair[al], pair[be]
            shift = avals[al] - avals[be]
            for i, j in ya.boxes():
                E = shift - _e1 * yb.leg(i, j) + _e2 * (ya.arm(i, j) + 1)
                den.append(E)
                den.append(eps - E)
                if flavor == "star":
                    num.append(E - _m)
                    num.append(eps - E - _m)
    n = ONE
    for f in num:
        n = n * f
    d = ONE
    for f in den:
        d = d * f
    return n / d


def _z_level(level: int, flavor: str, jobs: int = 1) -> RatFunc:
    pairs = enumerate_partition_pairs(level)
    if jobs > 1:
        with ThreadPoolExecutor(jobs) as pool:
            terms = list(pool.map(lambda p: _weight(p, flavor), pairs))
    else:
        terms = [_weight(p, flavor) for p in pairs]
    return rsum(terms)


@lru_cache(maxsize=None)
def _z_coeffs(flavor: str, level: int) -> tuple[RatFunc, ...]:
    return tuple(_z_level(l, flavor) for l in range(level + 1))


def z_pure(level: int) -> PuiseuxSeries:
    """Pure SU(2) partition function through q_in^level."""
    return PuiseuxSeries(QIN, dict(enumerate(_z_coeffs("pure", level))), level + 1)


def z_star(level: int) -> PuiseuxSeries:
    """Adjoint-matter (N=2*) partition function through q_in^level, U(2) normalization."""
    return PuiseuxSeries(QIN, dict(enumerate(_z_coeffs("star", level))), level + 1)


def _log_coeffs(z: Sequence[RatFunc], levels: int) -> list[RatFunc]:
    """Coefficients L_1..L_levels of log(1 + sum z_l x^l) by l L_l = l z_l - sum_{k<l} k L_k z_{l-k}."""
    L = [ZERO]
    for l in range(1, levels + 1):
        acc = [z[l] * l] + [-(L[k] * k) * z[l - k] for k in range(1, l)]
        L.append(rsum(acc) / l)
    return L


def prepotential_coeffs(Z: PuiseuxSeries, levels: int) -> list[RatFunc]:
    """F_1..F_levels of -eps1 eps2 log Z at eps2 = 0 (functions of a, m, eps1)."""
    z = [Z.coefficient(l) for l in range(levels + 1)]
    if z[0] != ONE:
        raise ValueError("partition function must start with 1")
    L = _log_coeffs(z, levels)
    out = []
    for l in range(1, levels + 1):
        F = -(_e1 * _e2) * L[l]
        try:
            out.append(F.subs({"eps2": 0}))
        except PoleHit as exc:
            raise PoleHit(f"eps2 -> 0 is not removable at level {l}") from exc
    return out


@lru_cache(maxsize=None)
def prepotential(flavor: str, levels: int) -> tuple[RatFunc, ...]:
    Z = z_pure(levels) if flavor == "pure" else z_star(levels)
    return tuple(prepotential_coeffs(Z, levels))


def matone_u(F: Sequence[RatFunc]) -> list[RatFunc]:
    """u_l = l F_l / 2 for l = 1, 2, ...; the returned list starts at l = 1."""
    return [f * Fraction(l, 2) for l, f in enumerate(F, start=1)]


def to_nu_n(F: RatFunc, eps1_one: bool = True) -> RatFunc:
    """Rewrite a function of (a, m, eps1) in nu = 2a/eps1 and n = m/eps1."""
    out = F.subs({"a": _nu * _e1 / 2, "m": _n * _e1})
    return out.subs({"eps1": 1}) if eps1_one else out


def _symmetric_poly_to_nn1(p: RatFunc) -> RatFunc:
    shifted = p.subs({"n": _X + Fraction(1, 2)})
    coeffs = shifted.poly_coeffs("X")
    out = ZERO
    base = _nn1 + Fraction(1, 4)
    for e, c in coeffs.items():
        if e % 2:
            raise ValueError("polynomial is not symmetric under n -> 1 - n")
        out = out + c * base ** (e // 2)
    return out


def in_nn1(r: RatFunc) -> RatFunc:
    """Express a function invariant under n -> 1-n through nn1 = n(n-1)."""
    if "n" not in r.symbols():
        return r
    if r.subs({"n": 1 - _n}) != r:
        raise ValueError("expression is not invariant under n -> 1 - n")
    num, den = r.numer(), r.denom()
    if num.subs({"n": 1 - _n}) != num:
        # both numerator and denominator are odd about n = 1/2
        num, den = num * (2 * _n - 1), den * (2 * _n - 1)
    return _symmetric_poly_to_nn1(num) / _symmetric_poly_to_nn1(den)


def nn1_to_n(r: RatFunc) -> RatFunc:
    return RatFunc.coerce(r).subs({"nn1": _n * (_n - 1)})


# ---------------------------------------------------------------------------
# derived series

def e2_rat(order: int) -> PuiseuxSeries:
    return eisenstein_e2(order)


def u1_shift(order: int, variables: str = "amplitude") -> PuiseuxSeries:
    """The U(1) difference (1/12) m (m - eps1)(1 - E2) as a series in q.

    ``variables="nu_n"`` gives it at eps1 = 1 with m(m-1) written as nn1.
    """
    pref = _m * (_m - _e1) / 12 if variables == "amplitude" else _nn1 / 12
    return (1 - eisenstein_e2(order)) * pref


def singularity_series(order) -> tuple[PuiseuxSeries, PuiseuxSeries, PuiseuxSeries]:
    """u/m^2 = e_i/8 - (1 - 2 E2)/24 for i = 1, 2, 3."""
    r = e_roots(order)
    shift = (1 - eisenstein_e2(int(order)) * 2) * Fraction(1, 24)
    return tuple((e * Fraction(1, 8) - shift).truncate(r.e1.prec) for e in (r.e1, r.e2, r.e3))


def f_star_nu_n(levels: int) -> list[RatFunc]:
    """Star-flavor F_l at eps1 = 1 in (nu, nn1)."""
    return [in_nn1(to_nu_n(f)) for f in prepotential("star", levels)]


def f_pure_nu(levels: int) -> list[RatFunc]:
    """Pure-flavor F_l at eps1 = 1 as functions of nu."""
    return [to_nu_n(f) for f in prepotential("pure", levels)]


def decoupling_check(levels: int) -> list[bool]:
    """Leading large-m behavior of star F_l is m^(4l) times pure F_l."""
    out = []
    for l, (fs, fp) in enumerate(zip(prepotential("star", levels), prepotential("pure", levels)), start=1):
        # F_star(m) / m^(4l) at m = 1/X, then X -> 0
        g = (fs * _X ** (4 * l)).subs({"m": 1 / _X}).subs({"X": 0})
        out.append(g == fp)
    return out


__all__ = [
    "Partition", "partitions", "enumerate_partition_pairs", "z_pure", "z_star",
    "prepotential_coeffs", "prepotential", "matone_u", "to_nu_n", "in_nn1", "nn1_to_n",
    "u1_shift", "singularity_series", "f_star_nu_n", "f_pure_nu", "decoupling_check",
]
