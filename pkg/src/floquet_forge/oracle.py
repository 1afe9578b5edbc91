"""Numeric Floquet exponents by monodromy integration.

Only real parameter slices are handled.  The monodromy matrix T of
y'' = V(x) y over one period has det T = 1, so tr T / 2 = cos(period * nu)
fixes the exponent up to sign and lattice shifts; the representative is
chosen closest to a reference value (the free exponent sqrt(lambda), or
sqrt(-A - kappa^2/2) for Lamé).
"""

from __future__ import annotations

import cmath
import math
import time
import warnings
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

import numpy as np
from scipy.integrate import solve_ivp

from .errors import AmbiguousRegion, BranchAmbiguity, DomainError, RegionViolation, StiffnessFailure
from .modular import elliptic_KE_numeric

RTOL = 1e-12
ATOL = 1e-14
DRIFT_TOL = 1e-9


def _landen_tables(m: float):
    """AGM scale and the ratios c_j / a_j used by the backward Landen sweep."""
    a, b = 1.0, math.sqrt(1.0 - m)
    as_, cs = [a], [math.sqrt(m)]
    while abs(cs[-1]) > 1e-15 * a:
        a, b, c = 0.5 * (a + b), math.sqrt(a * b), 0.5 * (a - b)
        as_.append(a)
        cs.append(c)
        if len(as_) > 64:
            raise DomainError("AGM did not converge")
    n = len(as_) - 1
    return (2 ** n) * as_[n], [cs[j] / as_[j] for j in range(n, 0, -1)]


def _sn_vectorised(k: float):
    """sn(., k^2) for repeated evaluation with the AGM tables computed once."""
    m = k * k
    if not (0.0 <= m < 1.0):
        raise DomainError(f"k^2 = {m} outside [0, 1)")
    if m == 0.0:
        return math.sin
    scale, ratios = _landen_tables(m)

    def sn(x: float) -> float:
        phi = scale * x
        for r in ratios:
            phi = 0.5 * (phi + math.asin(r * math.sin(phi)))
        return math.sin(phi)

    return sn


def jacobi_sn_numeric(x: float, k: float) -> float:
    """sn(x | k^2) by the descending Landen (AGM) scheme."""
    return _sn_vectorised(k)(x)


@dataclass(frozen=True)
class MonodromyResult:
    trace: float
    exponent: complex
    wronskian_drift: float
    step_count: int
    period: float

    def to_dict(self) -> dict:
        return {"trace": self.trace, "exponent": [self.exponent.real, self.exponent.imag],
                "wronskian_drift": self.wronskian_drift, "step_count": self.step_count,
                "period": self.period}


def _monodromy(V: Callable[[float], float], period: float, rtol: float, atol: float):
    def rhs(x, y):
        v = V(x)
        return [y[1], v * y[0], y[3], v * y[2]]

    sol = solve_ivp(rhs, (0.0, period), [1.0, 0.0, 0.0, 1.0], method="DOP853",
                    rtol=rtol, atol=atol)
    if sol.status != 0:
        raise StiffnessFailure(sol.message)
    y = sol.y[:, -1]
    T = np.array([[y[0], y[2]], [y[1], y[3]]])
    return T, int(sol.t.size - 1)


def _pick_exponent(half_trace: float, period: float, reference: float) -> complex:
    """nu with cos(period nu) = half_trace, nearest to ``reference`` among
    +-nu0 + 2 pi j / period."""
    base = cmath.acos(complex(half_trace, 0.0)) / period
    lattice = 2.0 * math.pi / period
    best = None
    for sgn in (1, -1):
        cand = sgn * base
        j = round((reference - cand.real) / lattice)
        cand = cand + j * lattice
        # keep the imaginary part nonnegative for a canonical answer
        cand = complex(cand.real, abs(cand.imag))
        if best is None or abs(cand.real - reference) < abs(best.real - reference):
            best = cand
    return best


def monodromy_floquet(equation: str, *, lam: float | None = None, h: float | None = None,
                      A: float | None = None, n: float | None = None, k: float | None = None,
                      reference: Optional[float] = None, rtol: float = RTOL, atol: float = ATOL,
                      edge_tol: float = 0.0, drift_tol: float = DRIFT_TOL) -> MonodromyResult:
    """Floquet exponent of the Mathieu equation psi'' + (lam - 2h cos 2z) psi = 0
    (period pi) or of the Lamé equation Phi'' = (A + n(n-1) k^2 sn^2) Phi (period 2K).

    ``edge_tol``: raise BranchAmbiguity when |tr/2| is within this distance of 1.
    """
    if equation == "mathieu":
        if lam is None or h is None:
            raise ValueError("mathieu needs lam and h")
        V = lambda z: 2.0 * h * math.cos(2.0 * z) - lam
        period = math.pi
        ref = reference if reference is not None else math.sqrt(abs(lam))
    elif equation == "lame":
        if A is None or n is None or k is None:
            raise ValueError("lame needs A, n and k")
        K, _ = elliptic_KE_numeric(k * k)
        sn = _sn_vectorised(k)
        c = n * (n - 1) * k * k
        V = lambda x: A + c * sn(x) ** 2
        period = 2.0 * K
        ref = reference if reference is not None else math.sqrt(abs(A + c / 2.0))
    else:
        raise ValueError(f"unknown equation {equation!r}")
    T, steps = _monodromy(V, period, rtol, atol)
    drift = abs(float(np.linalg.det(T)) - 1.0)
    if drift > drift_tol:
        raise StiffnessFailure(f"Wronskian drift {drift:.3g} exceeds {drift_tol:.3g}")
    half = 0.5 * float(np.trace(T))
    if edge_tol and abs(abs(half) - 1.0) < edge_tol:
        raise BranchAmbiguity(f"|tr/2| = {abs(half):.16g} is at a band edge")
    return MonodromyResult(2.0 * half, _pick_exponent(half, period, ref), drift, steps, period)


# ---------------------------------------------------------------------------
# expansion verification

@dataclass
class VerificationReport:
    equation: str
    region: str
    params: dict
    orders: list
    residuals: list
    wronskian_drift: float
    decreasing: bool
    seconds: float = 0.0
    warnings: list = field(default_factory=list)

    def to_dict(self) -> dict:
        return {"equation": self.equation, "region": self.region, "params": self.params,
                "orders": self.orders, "residuals": self.residuals,
                "wronskian_drift": self.wronskian_drift}

    def passes(self, tol: float) -> bool:
        return self.residuals[-1] < tol


def _series_value(series, x: float, values: dict) -> float:
    return complex(series.evaluate(x, values))


def _mathieu_electric_lambda(order: int, nu: float, h: float) -> float:
    from .spectra import mathieu_expansion

    s = mathieu_expansion("electric", order).series
    return _series_value(s, h, {"nu": nu}).real


def _lame_electric_A(order: int, mu: float, n: float, k: float) -> float:
    """A from B truncated at q^order: A = B/(e1-e2) - (1+k^2) n(n-1)/3, nu = mu sqrt(e1-e2)."""
    from .spectra import lame_B_electric

    K, _ = elliptic_KE_numeric(k * k)
    Kp, _ = elliptic_KE_numeric(1.0 - k * k)
    q = math.exp(-2.0 * math.pi * Kp / K)
    e12 = (2.0 * K / math.pi) ** 2
    nu = mu * math.sqrt(e12)
    B = _series_value(lame_B_electric(order).series, q, {"nu": nu, "nn1": n * (n - 1)}).real
    return B / e12 - (1.0 + k * k) * n * (n - 1) / 3.0


def verify_expansion(equation: str, region: str, params: dict, orders: Sequence[int],
                     tol: Optional[float] = None, rtol: float = RTOL) -> VerificationReport:
    """Residual |exponent(oracle) - exponent(input)| for each truncation order."""
    from .spectra import region_advise

    t0 = time.perf_counter()
    notes = []
    try:
        if equation == "mathieu":
            advice = region_advise(nu=params["nu"], h=params["h"])
        else:
            advice = region_advise(mu=params["mu"], n=params["n"], k=params["k"])
        if region not in (advice.region,) + advice.alternatives:
            msg = f"parameters advise {advice.rationale}"
            warnings.warn(msg, RegionViolation)
            notes.append(msg)
        elif not advice.satisfied:
            notes.append(f"inside {region} but short of the margin: {advice.rationale}")
    except AmbiguousRegion as exc:
        warnings.warn(str(exc), RegionViolation)
        notes.append(str(exc))
    residuals, drift = [], 0.0
    for order in orders:
        if equation == "mathieu" and region == "electric":
            nu, h = params["nu"], params["h"]
            lam = _mathieu_electric_lambda(order, nu, h)
            res = monodromy_floquet("mathieu", lam=lam, h=h, reference=nu, rtol=rtol)
            residuals.append(abs(res.exponent - nu))
        elif equation == "lame" and region == "electric":
            mu, n, k = params["mu"], params["n"], params["k"]
            A = _lame_electric_A(order, mu, n, k)
            res = monodromy_floquet("lame", A=A, n=n, k=k, reference=mu, rtol=rtol)
            residuals.append(abs(res.exponent - mu))
        else:
            raise ValueError(f"no oracle for {equation} {region}")
        drift = max(drift, res.wronskian_drift)
    decreasing = all(b <= a for a, b in zip(residuals, residuals[1:]))
    return VerificationReport(equation, region, dict(params), list(orders), residuals, drift,
                              decreasing, time.perf_counter() - t0, notes)


__all__ = [
    "jacobi_sn_numeric", "MonodromyResult", "monodromy_floquet", "VerificationReport",
    "verify_expansion",
]
