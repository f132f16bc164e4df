"""
Computation bounds of the universe, horizon energetics and thermal
potentials.

lloyd_bounds takes SI inputs. The horizon, entropy-profile and thermal
routines are written for natural units but accept any Constants set.
"""

import logging
import math

from dataclasses import dataclass, replace
from typing import Callable, Dict, Optional, Sequence, Tuple

import numpy as np

from apps.core.exceptions import DomainError
from apps.core.lib.units import Constants

logger = logging.getLogger(__name__)

LN2 = math.log(2.0)

SECONDS_PER_YEAR = 365.25 * 86400.0


def _require_positive(**values: float) -> None:
    for name, value in values.items():
        if not value > 0:
            raise DomainError(name, value, f'{name} > 0')


def lloyd_bounds(E: float, S: float, rho: float, t: float, constants: Constants) -> Dict[str, float]:
    """
    The four operation-count bounds.

    Args:
        E: Energy available for computation
        S: Entropy
        rho: Mass density
        t: Age
        constants: Constant set the inputs are expressed in

    Returns:
        Dict with rate_bound (ops per unit time), memory_bound (bits),
        matter_bound (ops, rho c^5 t^4 / hbar) and refined (ops)
    """
    _require_positive(E=E, S=S, rho=rho, t=t)
    t_p = constants.t_p
    return {
        'rate_bound': 2.0 * E / (math.pi * constants.hbar),
        'memory_bound': S / (constants.k_B * LN2),
        'matter_bound': rho * constants.c ** 5 * t ** 4 / constants.hbar,
        'refined': 4.0 * E / constants.hbar * (t - math.sqrt(t * t_p)),
    }


def graviton_critical_density(omega: float, V4: float, constants: Constants) -> float:
    """Critical density hbar*omega / V4 carried by one graviton over a four-volume."""
    _require_positive(omega=omega, V4=V4)
    return constants.hbar * omega / V4


def horizon_quantities(constants: Constants, rho_crit: Optional[float] = None,
                       H: Optional[float] = None) -> Dict[str, float]:
    """
    Hubble rate, horizon distance and horizon energy.

    Exactly one of rho_crit or H must be given. The horizon energy uses the
    1/(t_p^2 H) form.
    """
    if (rho_crit is None) == (H is None):
        raise DomainError('rho_crit/H', (rho_crit, H), 'exactly one of rho_crit or H')
    if H is None:
        _require_positive(rho_crit=rho_crit)
        H = math.sqrt(8.0 * math.pi * constants.G * rho_crit / (3.0 * constants.c ** 2))
    _require_positive(H=H)
    return {
        'H': H,
        'horizon_distance': constants.c / H,
        'horizon_energy': 1.0 / (constants.t_p ** 2 * H),
    }


def ops_from_entropy(S: float, constants: Constants) -> float:
    """Operation count [3 ln2 / 4]^(4/3) [S / (k_B ln2)]^(4/3)."""
    _require_positive(S=S)
    return (3.0 * LN2 / 4.0) ** (4.0 / 3.0) * (S / (constants.k_B * LN2)) ** (4.0 / 3.0)


def entropy_for_operations(n_ops: float, constants: Constants) -> float:
    """Entropy whose operation count is n_ops."""
    _require_positive(n_ops=n_ops)
    return constants.k_B * LN2 * n_ops ** 0.75 / (3.0 * LN2 / 4.0)


def operations_from_graviton(V4: float, omega: float, constants: Constants) -> Dict[str, float]:
    """
    Operation count from a four-volume and a graviton frequency.

    The volume form sqrt(V4) / (t_p^2 sqrt(8 pi G hbar omega / 3 c^2)) equals
    the horizon form 1/(t_p^2 H) with rho_crit = hbar omega / V4. The two
    mix volume and frequency without a dimensional reconciliation.
    """
    rho_crit = graviton_critical_density(omega, V4, constants)
    horizon = horizon_quantities(constants, rho_crit=rho_crit)
    volume_form = math.sqrt(V4) / (
        constants.t_p ** 2 * math.sqrt(8.0 * math.pi * constants.G * constants.hbar * omega / (3.0 * constants.c ** 2))
    )
    n_ops = horizon['horizon_energy']
    return {
        'rho_crit': rho_crit,
        'horizon_form': n_ops,
        'volume_form': volume_form,
        'matched_entropy': entropy_for_operations(n_ops, constants),
    }


def fit_power_law(x: Sequence[float], y: Sequence[float]) -> Tuple[float, float]:
    """Least-squares exponent and log-prefactor of y = C x^k."""
    slope, intercept = np.polyfit(np.log(np.asarray(x, dtype=float)), np.log(np.asarray(y, dtype=float)), 1)
    return float(slope), float(intercept)


def free_energy(T: float) -> float:
    """Free energy density -pi^2 T^4 / 90 of a massless scalar."""
    if T < 0:
        raise DomainError('T', T, 'T >= 0')
    return -math.pi ** 2 * T ** 4 / 90.0


def energy_density(T: float) -> float:
    if T < 0:
        raise DomainError('T', T, 'T >= 0')
    return math.pi ** 2 * T ** 4 / 30.0


def one_loop_potential(phi_c: float, T: float, lambda_coupling: float,
                       v0_fn: Callable[[float], float]) -> float:
    """
    One-loop effective potential V0(phi) + (lambda/8) T^2 phi^2 - pi^2 T^4 / 90.

    The thermal -s(T^2) term is read as the free energy of a massless scalar.
    """
    return v0_fn(phi_c) + lambda_coupling / 8.0 * T ** 2 * phi_c ** 2 + free_energy(T)


def four_volume(t: float) -> float:
    """Default four-volume (c t)^3 * c t in natural units."""
    return t ** 4


@dataclass(frozen=True)
class EntropyProfileParams:
    s_tau0: float = 2.2e56
    tau0: float = 1.0
    k_sigma: float = 1.0
    s_net: float = 1.0
    volume_fn: Callable[[float], float] = four_volume
    t_p: float = 1.0
    t_cmb: float = 2.2e56

    def __post_init__(self):
        for name in ('s_tau0', 'tau0', 'k_sigma', 's_net', 't_p', 't_cmb'):
            value = getattr(self, name)
            if not value > 0:
                raise DomainError(name, value, f'{name} > 0')
        if not self.t_p < self.t_cmb:
            raise DomainError('t_cmb', self.t_cmb, f't_cmb > t_p ({self.t_p})')

    def calibrated(self) -> 'EntropyProfileParams':
        """
        Copy whose k_sigma and s_tau0 make the profile continuous at t_p and t_cmb.
        """
        return replace(
            self,
            k_sigma=self.s_net * self.volume_fn(self.t_p) / self.t_p ** 2,
            s_tau0=self.s_net * self.t_cmb / self.tau0,
        )


@dataclass(frozen=True)
class EntropyValue:
    entropy: float
    density: float
    regime: int


def entropy_density(tau: float, p: EntropyProfileParams) -> float:
    """Inverse-law entropy density s(tau0) * tau0 / tau."""
    _require_positive(tau=tau)
    return p.s_tau0 * p.tau0 / tau


def entropy_profile(t: float, p: EntropyProfileParams) -> EntropyValue:
    """
    Piecewise entropy history.

    Regime 1 (t < t_p) grows as k_sigma t^2, regime 2 (t_p <= t < t_cmb) as
    s_net V(t), regime 3 as s(tau0) V(t) tau0 / t.
    """
    _require_positive(t=t)
    if t < p.t_p:
        entropy, regime = p.k_sigma * t ** 2, 1
    elif t < p.t_cmb:
        entropy, regime = p.s_net * p.volume_fn(t), 2
    else:
        entropy, regime = p.s_tau0 * p.volume_fn(t) * p.tau0 / t, 3
    return EntropyValue(entropy=entropy, density=entropy_density(t, p), regime=regime)
