"""
Minisuperspace Wheeler-DeWitt equation

    Psi''(a) = (9 pi^2 / 4 G^2) (a^2 - (lambda_eff / 3) a^4) Psi(a)

integrated from the left end of the scale-factor domain. The equation has
Airy-type closed forms near its turning point; the adaptive integrator is the
only solution path used here.
"""

import logging
import math

from dataclasses import dataclass, replace
from typing import Dict, List, Optional

import numpy as np
from scipy import integrate

from apps.core.exceptions import DomainError, IntegrationError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class WdwConfig:
    """
    Equation and boundary data in natural units.

    value and slope are Psi and Psi' at a_min. samples is the number of
    evenly spaced output points on [a_min, a_max].
    """

    lambda_eff: float = 0.0
    G: float = 1.0
    a_min: float = 0.0
    a_max: float = 1.0
    value: float = 1.0
    slope: float = 0.0
    tol: float = 1.0e-10
    samples: int = 201
    max_step: Optional[float] = None

    def __post_init__(self):
        if not self.a_max > self.a_min:
            raise DomainError('a_max', self.a_max, f'a_max > a_min ({self.a_min})')
        if not self.tol > 0:
            raise DomainError('tol', self.tol, 'tol > 0')
        if not self.G > 0:
            raise DomainError('G', self.G, 'G > 0')
        if self.samples < 2:
            raise DomainError('samples', self.samples, 'samples >= 2')
        if self.max_step is not None and not self.max_step > 0:
            raise DomainError('max_step', self.max_step, 'max_step > 0')

    @property
    def grid(self) -> np.ndarray:
        return np.linspace(self.a_min, self.a_max, self.samples)


@dataclass(frozen=True)
class WdwSolution:
    a: np.ndarray
    psi: np.ndarray
    psi_prime: np.ndarray
    # Fundamental solutions: u(a_min) = 1, u' = 0 and v(a_min) = 0, v' = 1
    u: np.ndarray
    v: np.ndarray

    def rows(self) -> List[Dict[str, float]]:
        return [{'a': float(a), 'psi': float(psi)} for a, psi in zip(self.a, self.psi)]

    def with_boundary(self, value: float, slope: float) -> np.ndarray:
        return value * self.u + slope * self.v


def potential(a, lambda_eff: float, G: float):
    """(9 pi^2 / 4 G^2) (a^2 - (lambda_eff / 3) a^4)."""
    a = np.asarray(a, dtype=float)
    return 9.0 * math.pi ** 2 / (4.0 * G ** 2) * (a ** 2 - lambda_eff / 3.0 * a ** 4)


def wdw_solve(cfg: WdwConfig) -> WdwSolution:
    """
    Sample Psi on cfg.grid.

    The two fundamental solutions are integrated together and combined with
    the boundary data, so Psi is linear in (value, slope) up to roundoff.

    Raises:
        IntegrationError: If the step size collapses; carries the scale factor reached
    """
    coefficient = 9.0 * math.pi ** 2 / (4.0 * cfg.G ** 2)

    def rhs(a, y):
        weight = coefficient * (a * a - cfg.lambda_eff / 3.0 * a ** 4)
        return [y[1], weight * y[0], y[3], weight * y[2]]

    options = {'rtol': cfg.tol, 'atol': cfg.tol * 1.0e-4}
    if cfg.max_step is not None:
        options['max_step'] = cfg.max_step
    grid = cfg.grid
    solution = integrate.solve_ivp(rhs, (cfg.a_min, cfg.a_max), [1.0, 0.0, 0.0, 1.0],
                                   method='DOP853', t_eval=grid, **options)
    if solution.status != 0:
        reached = float(solution.t[-1]) if solution.t.size else cfg.a_min
        logger.error(f"WDW integration stopped at a={reached}: {solution.message}")
        raise IntegrationError(
            f"Step size collapsed: {solution.message}", location=reached, a_max=cfg.a_max,
        )
    u, u_prime, v, v_prime = solution.y
    psi = cfg.value * u + cfg.slope * v
    psi_prime = cfg.value * u_prime + cfg.slope * v_prime
    logger.debug(f"WDW solved on [{cfg.a_min}, {cfg.a_max}] with {solution.nfev} evaluations")
    return WdwSolution(a=solution.t, psi=psi, psi_prime=psi_prime, u=u, v=v)


def step_halving_deviation(cfg: WdwConfig, max_step: Optional[float] = None) -> float:
    """
    Relative disagreement between runs capped at max_step and max_step / 2.

    The default cap is one output spacing. The deviation is max |dPsi| over
    max |Psi| on the shared samples.
    """
    if max_step is None:
        max_step = (cfg.a_max - cfg.a_min) / (cfg.samples - 1)
    coarse = wdw_solve(replace(cfg, max_step=max_step))
    fine = wdw_solve(replace(cfg, max_step=0.5 * max_step))
    scale = float(np.max(np.abs(fine.psi)))
    if scale == 0.0:
        return float(np.max(np.abs(coarse.psi - fine.psi)))
    return float(np.max(np.abs(coarse.psi - fine.psi))) / scale
