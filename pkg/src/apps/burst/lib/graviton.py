"""
Relic graviton burst: production power, thermal occupation and the burst table.

Occupations are computed in natural units (temperatures divided by the Planck
temperature, frequencies in 1/t_p). Powers are reported in watts.
"""

import logging
import math

from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

import numpy as np
from scipy import integrate

from apps.core.exceptions import DomainError, QuadratureError
from apps.core.lib.units import E_CRITICAL_EV, T_QUANTUM, Constants

logger = logging.getLogger(__name__)

OMEGA_NET_MODES = ('difference', 'upper')
EFFECTIVE_FREQUENCIES = ('char', 'net')


@dataclass(frozen=True)
class BurstConfig:
    """
    Inputs of the burst table.

    omega_lo and omega_hi are absolute natural-unit bounds; when left unset the
    bounds follow the temperature as omega_lo_fraction * T and
    omega_hi_multiple * T. The occupation spike comes from a Gaussian window in
    ln T of width window_sigma around burst_temperature (K).
    """

    T_star: float = T_QUANTUM / 3.0
    L_hat: Optional[float] = None
    m_graviton: float = 1.0e-60
    omega_lo: Optional[float] = None
    omega_hi: Optional[float] = None
    omega_lo_fraction: float = 1.0e-6
    omega_hi_multiple: float = 10.0
    n_plus: float = 0.5
    quadrature_tol: float = 1.0e-10
    omega_net_mode: str = 'difference'
    effective_frequency: str = 'char'
    normalization: bool = True
    normalization_scale: float = 1.0
    burst_temperature: float = 3.2 * T_QUANTUM / 3.0
    window_sigma: float = 0.0775
    power_threshold_fraction: float = 1.0e-2

    def __post_init__(self):
        if not 0.0 < self.n_plus < 1.0:
            raise DomainError('n_plus', self.n_plus, '0 < n_plus < 1')
        if not self.T_star > 0:
            raise DomainError('T_star', self.T_star, 'T_star > 0')
        if (self.omega_lo is None) != (self.omega_hi is None):
            raise DomainError('omega_hi', self.omega_hi, 'omega_lo and omega_hi set together')
        if self.omega_lo is not None and not 0 <= self.omega_lo < self.omega_hi:
            raise DomainError('omega_lo', self.omega_lo, f'0 <= omega_lo < omega_hi ({self.omega_hi})')
        if not 0 < self.omega_lo_fraction < self.omega_hi_multiple:
            raise DomainError('omega_lo_fraction', self.omega_lo_fraction, '0 < fraction < omega_hi_multiple')
        if self.omega_net_mode not in OMEGA_NET_MODES:
            raise DomainError('omega_net_mode', self.omega_net_mode, f'one of {OMEGA_NET_MODES}')
        if self.effective_frequency not in EFFECTIVE_FREQUENCIES:
            raise DomainError('effective_frequency', self.effective_frequency, f'one of {EFFECTIVE_FREQUENCIES}')
        for name in ('m_graviton', 'quadrature_tol', 'normalization_scale', 'burst_temperature', 'window_sigma'):
            value = getattr(self, name)
            if not value > 0:
                raise DomainError(name, value, f'{name} > 0')
        if self.power_threshold_fraction < 0:
            raise DomainError('power_threshold_fraction', self.power_threshold_fraction, '>= 0')


@dataclass(frozen=True)
class BurstRow:
    k: int
    T_kelvin: float
    occupation: float
    power_watts: float

    def as_row(self) -> Dict[str, object]:
        return {
            'k': self.k,
            'T_kelvin': self.T_kelvin,
            'occupation': self.occupation,
            'power_watts': self.power_watts,
        }


def fontana_power(m: float, L: float, omega: float, constants: Constants) -> float:
    """Graviton production power 2 m^2 L^4 omega^6 / (45 c^5 G)."""
    for name, value in (('m', m), ('L', L), ('omega', omega)):
        if value < 0:
            raise DomainError(name, value, f'{name} >= 0')
    return 2.0 * m ** 2 * L ** 4 * omega ** 6 / (45.0 * constants.c ** 5 * constants.G)


def occupation_bounds(T_nat: float, cfg: BurstConfig) -> Tuple[float, float]:
    if cfg.omega_lo is not None:
        return cfg.omega_lo, cfg.omega_hi
    return cfg.omega_lo_fraction * T_nat, cfg.omega_hi_multiple * T_nat


def omega_net(lo: float, hi: float, cfg: BurstConfig) -> float:
    return hi - lo if cfg.omega_net_mode == 'difference' else hi


def mean_occupation(T: float, cfg: BurstConfig, constants: Constants) -> float:
    """
    Band-averaged Bose occupation (1/omega_net) * integral of the Bose integrand.

    Args:
        T: Temperature (K)
        cfg: Burst configuration (bounds, tolerance, omega_net mode)
        constants: Constant set used for the Kelvin to Planck conversion

    Raises:
        QuadratureError: If adaptive quadrature misses quadrature_tol
    """
    if not T > 0:
        raise DomainError('T', T, 'T > 0')
    T_nat = constants.kelvin_to_planck(T)
    lo, hi = occupation_bounds(T_nat, cfg)

    def integrand(omega: float) -> float:
        x = 2.0 * math.pi * omega / T_nat
        if x > 700.0:
            return omega ** 2 / math.pi ** 2 * math.exp(-x)
        if x == 0:
            return 0.0
        return omega ** 2 / math.pi ** 2 / math.expm1(x)

    result = integrate.quad(integrand, lo, hi, epsabs=0.0, epsrel=cfg.quadrature_tol,
                            limit=200, full_output=1)
    value, abserr = result[0], result[1]
    if len(result) > 3:
        raise QuadratureError(
            f"Occupation integral at T={T!r} K did not converge: {result[3]}",
            temperature=T,
            achieved=abserr,
            requested=cfg.quadrature_tol,
        )
    return value / omega_net(lo, hi, cfg)


def burst_window(T: float, cfg: BurstConfig) -> float:
    """Gaussian window in ln T centred on the burst temperature."""
    spread = math.log(T / cfg.burst_temperature) / cfg.window_sigma
    return math.exp(-0.5 * spread ** 2)


def burst_energy(V4: float, lam: float, omega_graviton: float, cfg: BurstConfig,
                 constants: Constants) -> Dict[str, float]:
    """Vacuum energy V4 lambda / (8 pi G) against n_plus hbar omega, and their ratio."""
    for name, value in (('V4', V4), ('lambda', lam), ('omega_graviton', omega_graviton)):
        if not value > 0:
            raise DomainError(name, value, f'{name} > 0')
    e_vac = V4 * lam / (8.0 * math.pi * constants.G)
    e_grav = cfg.n_plus * constants.hbar * omega_graviton
    return {'E_vac': e_vac, 'E_grav': e_grav, 'ratio': e_vac / e_grav}


def characteristic_frequency(constants: Constants) -> float:
    """E_critical / hbar in rad/s."""
    return E_CRITICAL_EV * constants.electron_volt / constants.hbar


def burst_table(cfg: BurstConfig, constants: Optional[Constants] = None,
                power_threshold: Optional[float] = None) -> List[BurstRow]:
    """
    Occupation and power at k * T_star for k = 1..5.

    Args:
        cfg: Burst configuration
        constants: SI constant set (CODATA defaults when omitted)
        power_threshold: Absolute occupation cutoff below which power is
            reported as 0; defaults to power_threshold_fraction * max occupation

    Returns:
        Five BurstRow records
    """
    constants = constants or Constants()
    L = cfg.L_hat if cfg.L_hat is not None else constants.l_p
    omega_char = characteristic_frequency(constants)

    occupations = []
    for k in range(1, 6):
        T = k * cfg.T_star
        occupation = mean_occupation(T, cfg, constants)
        if cfg.normalization:
            occupation *= cfg.normalization_scale * burst_window(T, cfg)
        occupations.append(occupation)

    if power_threshold is None:
        power_threshold = cfg.power_threshold_fraction * max(occupations)

    rows = []
    for k, occupation in enumerate(occupations, start=1):
        T = k * cfg.T_star
        if cfg.effective_frequency == 'char':
            omega_eff = occupation * omega_char
        else:
            lo, hi = occupation_bounds(constants.kelvin_to_planck(T), cfg)
            omega_eff = occupation * omega_net(lo, hi, cfg) / constants.t_p
        gated = occupation == 0 or occupation < power_threshold
        power = 0.0 if gated else fontana_power(cfg.m_graviton, L, omega_eff, constants)
        rows.append(BurstRow(k=k, T_kelvin=T, occupation=occupation, power_watts=power))

    logger.info(f"Burst table at T*={cfg.T_star:.4e} K: peak occupation at k="
                f"{int(np.argmax(occupations)) + 1}")
    return rows
