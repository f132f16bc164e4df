"""
Temperature-dependent vacuum-energy models.

Temperatures are in Kelvin; vacuum-energy parameters are in natural Planck
units, where the Barvinsky cap is 360 m_p^2 = 360.
"""

import logging
import math

from dataclasses import dataclass
from typing import Dict, Iterable, List

from apps.core.exceptions import DomainError, SingularityError
from apps.core.lib.units import E_CRITICAL_EV, T_PARK, T_QUANTUM, Constants

logger = logging.getLogger(__name__)

# Exponents above this are carried in log form only
LOG_OVERFLOW = 700.0

BARVINSKY_CAP = 360.0


@dataclass(frozen=True)
class LambdaModel:
    """
    Park-style temperature laws for the 4-dim and 5-dim vacuum energy.

    c2 is calibrated so that lambda_4d(1e32 K) = 8*pi*1e156; c1 so that the
    5-dim Hartle-Hawking amplitude at 1e32 K is about e^-47.
    """

    c1: float = 1.0e31
    c2: float = 8.0 * math.pi * 1.0e92
    alpha: float = 1.0
    beta: float = 2.0
    T_quantum: float = T_QUANTUM
    T_park: float = T_PARK
    lambda_barvinsky_cap: float = BARVINSKY_CAP

    def __post_init__(self):
        for name in ('c1', 'c2', 'alpha', 'beta', 'T_quantum', 'T_park', 'lambda_barvinsky_cap'):
            value = getattr(self, name)
            if not value > 0:
                raise DomainError(name, value, f'{name} > 0')


@dataclass(frozen=True)
class HHAmplitude:
    value: float
    log_value: float
    saturated: bool


@dataclass(frozen=True)
class EFolds:
    n: float
    ratio: float
    log_ratio: float
    log_form: bool


@dataclass(frozen=True)
class QuantumDominance:
    dominant: bool
    residual: float
    e_critical_ev: float = E_CRITICAL_EV


def _check_temperature(T: float) -> None:
    if not T > 0:
        raise DomainError('T', T, 'T > 0')


def _power(base: float, exponent: float) -> float:
    try:
        return math.pow(base, exponent)
    except OverflowError:
        return math.inf


def lambda_4d(T: float, model: LambdaModel, post_burst: bool = False) -> float:
    """
    4-dim vacuum-energy parameter c2 * T^beta.

    After the graviton burst the value is clamped to the Barvinsky cap.
    """
    _check_temperature(T)
    value = model.c2 * _power(T, model.beta)
    if post_burst:
        return min(value, model.lambda_barvinsky_cap)
    return value


def lambda_5d(T: float, model: LambdaModel) -> float:
    """5-dim vacuum-energy parameter -c1 / T^alpha, negative and vanishing as T grows."""
    _check_temperature(T)
    return -model.c1 / _power(T, model.alpha)


def lambda_max_park(model: LambdaModel) -> float:
    """lambda_4d evaluated at the Park temperature rather than the quantum threshold."""
    return lambda_4d(model.T_park, model)


def hh_amplitude(lam: float, G: float = 1.0) -> HHAmplitude:
    """
    Hartle-Hawking amplitude exp(+3*pi / (2*G*lambda)), positive exponent.

    Args:
        lam: Vacuum-energy parameter (non-zero)
        G: Gravitational constant in the units of lam

    Returns:
        HHAmplitude with the value, its natural log and a saturation flag
        set when the exponent passes LOG_OVERFLOW
    """
    if lam == 0:
        raise SingularityError('hh_amplitude is singular at lambda = 0', parameter='lambda')
    exponent = 3.0 * math.pi / (2.0 * G * lam)
    saturated = exponent > LOG_OVERFLOW
    value = math.inf if saturated else math.exp(exponent)
    return HHAmplitude(value=value, log_value=exponent, saturated=saturated)


def vacuum_density_holographic(H: float, constants: Constants) -> Dict[str, float]:
    """Holographic vacuum density l_p^-2 H^2 and the dark-energy estimate H^2 / G."""
    if not H > 0:
        raise DomainError('H', H, 'H > 0')
    return {
        'rho_vac': H ** 2 / constants.l_p ** 2,
        'delta_rho': H ** 2 / constants.G,
    }


def initial_lambda(H: float, constants: Constants) -> float:
    """Initial vacuum-energy parameter 8*pi*G * rho_vac for an early Hubble rate."""
    return 8.0 * math.pi * constants.G * vacuum_density_holographic(H, constants)['rho_vac']


def inflation_efolds(H: float, t_start: float, t_end: float) -> EFolds:
    """
    Number of e-folds H * (t_end - t_start) and the scale-factor ratio.

    The ratio is reported as inf with log_form set when N exceeds LOG_OVERFLOW.
    """
    if not H > 0:
        raise DomainError('H', H, 'H > 0')
    if not t_end > t_start:
        raise DomainError('t_end', t_end, f't_end > t_start ({t_start})')
    n = H * (t_end - t_start)
    log_form = n > LOG_OVERFLOW
    ratio = math.inf if log_form else math.exp(n)
    return EFolds(n=n, ratio=ratio, log_ratio=n, log_form=log_form)


def casimir_density(a: float, A: float) -> float:
    """Casimir parallel-plate energy density -A / a^4."""
    if not a > 0:
        raise DomainError('a', a, 'a > 0')
    if not A > 0:
        raise DomainError('A', A, 'A > 0')
    return -A / a ** 4


def quantum_dominance(lambda4: float, lambda5: float, n: int, tol: float) -> QuantumDominance:
    """Whether |lambda4| matches |lambda5| to O(tol / n)."""
    if lambda5 == 0:
        raise SingularityError('quantum_dominance is singular at lambda5 = 0', parameter='lambda5')
    if n < 1:
        raise DomainError('n', n, 'n >= 1')
    residual = lambda4 / abs(lambda5) - 1.0
    return QuantumDominance(dominant=abs(residual) <= tol / n, residual=residual)


def lambda_table(temperatures: Iterable[float], model: LambdaModel, G: float = 1.0,
                 post_burst: bool = False) -> List[Dict[str, float]]:
    """
    Rows of (T, lambda4, lambda5, hh_amplitude) for a temperature sweep.

    The amplitude column follows the active branch: the 5-dim law before the
    burst and the capped 4-dim law after it.
    """
    rows = []
    for T in temperatures:
        lam4 = lambda_4d(T, model, post_burst=post_burst)
        lam5 = lambda_5d(T, model)
        amplitude = hh_amplitude(lam4 if post_burst else lam5, G)
        rows.append({'T': T, 'lambda4': lam4, 'lambda5': lam5, 'hh_amplitude': amplitude.value})
    logger.debug(f"Built lambda table with {len(rows)} rows (post_burst={post_burst})")
    return rows
