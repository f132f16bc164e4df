"""
Friedmann rate, discrete scale-factor stepping and the causal-discontinuity
bound. Natural Planck units throughout (a0 defaults to l_p = 1).
"""

import logging
import math

from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

import numpy as np

from apps.core.exceptions import DomainError, IntegrationError
from apps.core.lib.units import Constants

logger = logging.getLogger(__name__)

EPSILON_CAUSAL = 1.0e-30


@dataclass(frozen=True)
class DensityParams:
    rho_rel0: float = 1.0
    rho_m0: float = 1.0
    a0: float = 1.0
    lam: float = 1.0
    G: float = 1.0

    def __post_init__(self):
        if self.rho_rel0 < 0:
            raise DomainError('rho_rel0', self.rho_rel0, 'rho_rel0 >= 0')
        if self.rho_m0 < 0:
            raise DomainError('rho_m0', self.rho_m0, 'rho_m0 >= 0')
        if not self.a0 > 0:
            raise DomainError('a0', self.a0, 'a0 > 0')


@dataclass(frozen=True)
class ScaleSeries:
    times: np.ndarray
    a_values: np.ndarray

    def __post_init__(self):
        times = np.asarray(self.times, dtype=float)
        a_values = np.asarray(self.a_values, dtype=float)
        if times.shape != a_values.shape or times.ndim != 1:
            raise DomainError('a_values', a_values.shape, f'same 1-d shape as times {times.shape}')
        if times.size > 1 and not np.all(np.diff(times) > 0):
            raise DomainError('times', 'non-increasing', 'strictly increasing times')
        if not np.all(a_values > 0):
            raise DomainError('a_values', 'non-positive entry', 'a_values > 0')
        object.__setattr__(self, 'times', times)
        object.__setattr__(self, 'a_values', a_values)

    def __len__(self):
        return int(self.times.size)


@dataclass(frozen=True)
class CausalBound:
    bound: float
    discontinuity: bool


def friedmann_rate(a: float, p: DensityParams) -> float:
    """Squared expansion rate (adot/a)^2 with radiation a^-4 and matter a^-3 scaling."""
    if not a > 0:
        raise DomainError('a', a, 'a > 0')
    ratio = p.a0 / a
    density = p.rho_rel0 * ratio ** 4 + p.rho_m0 * ratio ** 3
    return 8.0 * math.pi * p.G / 3.0 * density + p.lam / 3.0


def step_scale_factor(t0: float, a_start: float, dt: float, n: int, p: DensityParams) -> ScaleSeries:
    """
    Forward-Euler stepping a(t + dt) = a * (1 + dt * sqrt(rate^2)).

    Raises:
        IntegrationError: If the squared rate turns negative, with the step index
    """
    if not dt > 0:
        raise DomainError('dt', dt, 'dt > 0')
    if n < 1:
        raise DomainError('n', n, 'n >= 1')

    times = t0 + dt * np.arange(n + 1)
    a_values = np.empty(n + 1)
    a_values[0] = a_start
    a = a_start
    for step in range(n):
        rate2 = friedmann_rate(a, p)
        if rate2 < 0:
            raise IntegrationError(
                f"Negative squared expansion rate {rate2!r} at step {step}",
                step=step,
                time=float(times[step]),
            )
        a = a * (1.0 + dt * math.sqrt(rate2))
        a_values[step + 1] = a
    return ScaleSeries(times=times, a_values=a_values)


def causal_bound(dt: float, alpha: float, p: DensityParams, constants: Constants,
                 epsilon: float = EPSILON_CAUSAL) -> CausalBound:
    """
    Causal-discontinuity bound.

    The 1/sqrt(lambda/3) prefactor is kept even though it is not
    dimensionally homogeneous with the bracket.
    """
    if not dt > 0:
        raise DomainError('dt', dt, 'dt > 0')
    if alpha < 0:
        raise DomainError('alpha', alpha, 'alpha >= 0')
    if not p.lam > 0:
        raise DomainError('lambda', p.lam, 'lambda > 0')

    try:
        growth = p.rho_rel0 * math.pow(10.0, 4.0 * alpha) + p.rho_m0 * math.pow(10.0, 3.0 * alpha)
    except OverflowError:
        growth = math.inf
    bracket = 1.0 + 8.0 * math.pi / p.lam * growth
    bound = dt * constants.l_p / math.sqrt(p.lam / 3.0) * math.sqrt(bracket)
    return CausalBound(bound=bound, discontinuity=bound <= epsilon)


def causal_scan(lambdas: np.ndarray, dt: float, alpha: float, p: DensityParams, constants: Constants,
                epsilon: float = EPSILON_CAUSAL) -> List[Dict[str, object]]:
    """Rows of (lambda, bound, flag) over a vacuum-energy sweep."""
    rows = []
    for lam in lambdas:
        result = causal_bound(dt, alpha, _with_lambda(p, float(lam)), constants, epsilon)
        rows.append({'lambda': float(lam), 'bound': result.bound, 'flag': result.discontinuity})
    return rows


def critical_lambda(dt: float, alpha: float, p: DensityParams, constants: Constants,
                    epsilon: float = EPSILON_CAUSAL, lam_lo: float = 1.0e-12,
                    rtol: float = 1.0e-9, max_iter: int = 400) -> Optional[float]:
    """
    Smallest vacuum parameter above which the discontinuity flag is set.

    Bisection in log(lambda) after bracketing by decades. Returns None when
    the flag is already set at lam_lo or never set below 1e300.
    """
    def flagged(lam: float) -> bool:
        return causal_bound(dt, alpha, _with_lambda(p, lam), constants, epsilon).discontinuity

    if flagged(lam_lo):
        return None
    hi = lam_lo
    while not flagged(hi):
        hi *= 10.0
        if hi > 1.0e300:
            return None
    lo = hi / 10.0 if hi > lam_lo else lam_lo

    log_lo, log_hi = math.log(lo), math.log(hi)
    for _ in range(max_iter):
        if log_hi - log_lo <= rtol:
            break
        mid = 0.5 * (log_lo + log_hi)
        if flagged(math.exp(mid)):
            log_hi = mid
        else:
            log_lo = mid
    lam_star = math.exp(log_hi)
    logger.info(f"Critical lambda {lam_star:.6e} for dt={dt}, alpha={alpha}")
    return lam_star


def _with_lambda(p: DensityParams, lam: float) -> DensityParams:
    return DensityParams(rho_rel0=p.rho_rel0, rho_m0=p.rho_m0, a0=p.a0, lam=lam, G=p.G)


def flag_transitions(rows: List[Dict[str, object]]) -> Tuple[int, int]:
    """Number of False->True and True->False flips along a scan."""
    flags = [bool(row['flag']) for row in rows]
    up = sum(1 for left, right in zip(flags, flags[1:]) if not left and right)
    down = sum(1 for left, right in zip(flags, flags[1:]) if left and not right)
    return up, down
