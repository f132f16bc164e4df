"""
Randall-Sundrum radius potential, Kaluza-Klein masses and brane parameters.

The potential terms are evaluated through hyperbolic functions:
(1 + e^x)/(1 - e^x) = -coth(x/2) and (1 - e^y)/(1 + e^y) = -tanh(y/2),
which stay finite for large radii.
"""

import logging
import math

from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

import numpy as np
from scipy import optimize

from apps.core.exceptions import DomainError, SingularityError

logger = logging.getLogger(__name__)

GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0

# Stencil step exponent for the five-point derivative check
FD_STEP = np.finfo(float).eps ** 0.2


@dataclass(frozen=True)
class RSParams:
    """
    Brane couplings, bulk masses and the search bracket for the radius.

    Defaults admit an interior minimum near R = 0.45 with a maximum near
    R = 0.14 outside the bracket.
    """

    K: float = 1.0
    K_tilde: float = 5.5
    m5: float = 1.0
    m5_tilde: float = 3.0
    R_min: float = 0.3
    R_max: float = 2.0

    def __post_init__(self):
        if not self.m5 > 0:
            raise DomainError('m5', self.m5, 'm5 > 0')
        if not self.m5_tilde > 0:
            raise DomainError('m5_tilde', self.m5_tilde, 'm5_tilde > 0')
        if not 0 < self.R_min < self.R_max:
            raise DomainError('R_min', self.R_min, f'0 < R_min < R_max ({self.R_max})')


@dataclass(frozen=True)
class RSMinimum:
    """
    Outcome of the radius search.

    When found is False, R_critical is where the search ended and reason
    says why it is not a resolved interior minimum.
    """

    R_critical: float
    V_min: float
    curvature: float
    gradient: float
    found: bool = True
    reason: str = ''

    def quadratic_model(self, R: float) -> float:
        return self.V_min + 0.5 * self.curvature * (R - self.R_critical) ** 2


@dataclass(frozen=True)
class BraneParams:
    k5_sq: float = 6.0
    v0: float = 1.0
    lambda5: float = -10.0

    def __post_init__(self):
        if not self.k5_sq > 0:
            raise DomainError('k5_sq', self.k5_sq, 'k5_sq > 0')
        if not self.v0 > 0:
            raise DomainError('v0', self.v0, 'v0 > 0')
        if not self.lambda5 < 0:
            raise DomainError('lambda5', self.lambda5, 'lambda5 < 0')


def coth_term(R: float, K: float, m5: float) -> float:
    """(K^2 / 2 m5) (1 + e^x) / (1 - e^x) with x = m5 pi R."""
    half = 0.5 * m5 * math.pi * R
    if 2.0 * half < 1.0e-300:
        raise SingularityError(f"Radius potential is singular at R={R!r}", parameter='R')
    return -(K ** 2 / (2.0 * m5)) / math.tanh(half)


def tanh_term(R: float, K: float, m5: float) -> float:
    """(K^2 / 2 m5) (1 - e^y) / (1 + e^y) with y = m5 pi R."""
    return -(K ** 2 / (2.0 * m5)) * math.tanh(0.5 * m5 * math.pi * R)


def rs_terms(R: float, p: RSParams) -> Tuple[float, float]:
    """The coth-type term of (K, m5) and the tanh-type term of (K_tilde, m5_tilde)."""
    if not R > 0:
        raise DomainError('R', R, 'R > 0')
    return coth_term(R, p.K, p.m5), tanh_term(R, p.K_tilde, p.m5_tilde)


def rs_effective_potential(R: float, p: RSParams) -> float:
    first, second = rs_terms(R, p)
    return first + second


def _csch2(u: float) -> float:
    decay = math.exp(-2.0 * u)
    return 4.0 * decay / math.expm1(-2.0 * u) ** 2


def _sech2(v: float) -> float:
    decay = math.exp(-2.0 * v)
    return 4.0 * decay / (1.0 + decay) ** 2


def rs_gradient(R: float, p: RSParams) -> float:
    """Analytic dV/dR = (pi/4) [K^2 csch^2(m5 pi R/2) - K_tilde^2 sech^2(m5_tilde pi R/2)]."""
    u = 0.5 * p.m5 * math.pi * R
    v = 0.5 * p.m5_tilde * math.pi * R
    return 0.25 * math.pi * (p.K ** 2 * _csch2(u) - p.K_tilde ** 2 * _sech2(v))


def rs_curvature(R: float, p: RSParams) -> float:
    """Analytic d^2V/dR^2."""
    u = 0.5 * p.m5 * math.pi * R
    v = 0.5 * p.m5_tilde * math.pi * R
    first = -p.K ** 2 * p.m5 * _csch2(u) / math.tanh(u)
    second = p.K_tilde ** 2 * p.m5_tilde * _sech2(v) * math.tanh(v)
    return 0.25 * math.pi ** 2 * (first + second)


def finite_difference_gradient(R: float, p: RSParams, step: Optional[float] = None) -> float:
    """Five-point central difference of the potential at R."""
    h = step if step is not None else FD_STEP * R
    V = rs_effective_potential
    return (V(R - 2 * h, p) - 8 * V(R - h, p) + 8 * V(R + h, p) - V(R + 2 * h, p)) / (12.0 * h)


def golden_section(func, lo: float, hi: float, xtol: float, max_iter: int = 500) -> float:
    """Minimize a unimodal function on [lo, hi] by golden-section search."""
    x1 = hi - GOLDEN * (hi - lo)
    x2 = lo + GOLDEN * (hi - lo)
    f1, f2 = func(x1), func(x2)
    for _ in range(max_iter):
        if hi - lo <= xtol:
            break
        if f1 < f2:
            hi, x2, f2 = x2, x1, f1
            x1 = hi - GOLDEN * (hi - lo)
            f1 = func(x1)
        else:
            lo, x1, f1 = x1, x2, f2
            x2 = lo + GOLDEN * (hi - lo)
            f2 = func(x2)
    return 0.5 * (lo + hi)


def rs_minimize(p: RSParams, tol: float = 1.0e-10) -> RSMinimum:
    """
    Metastable radius minimizing the potential inside [R_min, R_max].

    Golden-section search locates the basin; the analytic gradient is then
    driven to zero by Brent's method on a bracket around the estimate.

    A minimum on the bracket edge, or a stationary point that is not a
    resolved minimum, comes back with found=False and a reason.
    """
    span = p.R_max - p.R_min
    estimate = golden_section(lambda R: rs_effective_potential(R, p), p.R_min, p.R_max, xtol=1.0e-8 * span)

    edge = 1.0e-6 * span
    if estimate - p.R_min <= edge or p.R_max - estimate <= edge:
        return _search_failure(
            estimate, p, f"No interior minimum in [{p.R_min}, {p.R_max}]; search ended at {estimate!r}",
        )

    width = 1.0e-3 * span
    lo, hi = max(p.R_min, estimate - width), min(p.R_max, estimate + width)
    if rs_gradient(lo, p) * rs_gradient(hi, p) < 0:
        R_star = optimize.brentq(rs_gradient, lo, hi, args=(p,), xtol=1.0e-15, rtol=4.0 * np.finfo(float).eps)
    else:
        R_star = estimate

    curvature = rs_curvature(R_star, p)
    gradient = finite_difference_gradient(R_star, p)
    if not curvature > 0 or abs(gradient) >= tol:
        return _search_failure(
            R_star, p, f"Stationary point at R={R_star!r} is not a resolved minimum "
            f"(curvature={curvature!r}, gradient={gradient!r})",
        )

    V_min = rs_effective_potential(R_star, p)
    logger.debug(f"Radius minimum at R={R_star:.12g}, V={V_min:.12g}, curvature={curvature:.6g}")
    return RSMinimum(R_critical=R_star, V_min=V_min, curvature=curvature, gradient=gradient)


def _search_failure(R_end: float, p: RSParams, reason: str) -> RSMinimum:
    logger.warning(f"Radius search failed: {reason}")
    return RSMinimum(
        R_critical=R_end,
        V_min=rs_effective_potential(R_end, p),
        curvature=rs_curvature(R_end, p),
        gradient=finite_difference_gradient(R_end, p),
        found=False,
        reason=reason,
    )


def rs_scan(radii: np.ndarray, p: RSParams) -> List[Dict[str, float]]:
    return [
        {'R': float(R), 'V': rs_effective_potential(float(R), p), 'dV': rs_gradient(float(R), p)}
        for R in radii
    ]


def kk_mass(n: int, R: float, m5: float) -> float:
    """Kaluza-Klein tower mass sqrt(n^2/R^2 + m5^2)."""
    if n < 0:
        raise DomainError('n', n, 'n >= 0')
    if not R > 0:
        raise DomainError('R', R, 'R > 0')
    return math.hypot(n / R, m5)


def brane_params(p: BraneParams, probe_m: float = 0.0, probe_phi: float = 0.0) -> Dict[str, object]:
    """
    Brane Hubble scale, effective bulk vacuum parameter and validity checks.

    validity requires lambda5_eff < 0 and |m^2| phi^2 / V0 < 0.01 for the probe.
    """
    H_hat = p.k5_sq * p.v0 / 6.0
    lambda5_eff = p.lambda5 + p.k5_sq * p.v0
    probe_ratio = abs(probe_m ** 2) * probe_phi ** 2 / p.v0
    negative_bulk = lambda5_eff < 0
    small_probe = probe_ratio < 0.01
    return {
        'H_hat': H_hat,
        'lambda5_eff': lambda5_eff,
        'probe_ratio': probe_ratio,
        'negative_bulk': negative_bulk,
        'small_probe': small_probe,
        'validity': negative_bulk and small_probe,
    }
