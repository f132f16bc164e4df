"""
Physical constants, the Planck natural-unit convention and the SI, Kelvin
and eV conversion layer.

Every numerical routine in cosmotoy works in natural Planck units
(hbar = c = k_B = G = 1). Values measured in SI, Kelvin or eV enter and leave
through the conversion methods on Constants.
"""

import logging
import math

from dataclasses import asdict, dataclass
from typing import Dict

import scipy.constants as codata

from apps.core.exceptions import DomainError

logger = logging.getLogger(__name__)

# Quantum gravity threshold temperature (K)
T_QUANTUM = 1.0e32

# Temperature used inside the Park maximum vacuum-energy expression (K)
T_PARK = 1.0e23

# Critical energy at which quantum effects dominate (eV)
E_CRITICAL_EV = 1.22e28

# Relative tolerance the Planck identities are held to
IDENTITY_RTOL = 1.0e-12


@dataclass(frozen=True)
class Constants:
    """
    Fundamental constants in SI plus the derived Planck scales.

    Defaults are CODATA 2018 values as shipped by scipy.constants. The
    electron_volt field is the number of joules in one eV and is only used
    by the eV conversions.
    """

    G: float = codata.G
    hbar: float = codata.hbar
    c: float = codata.c
    k_B: float = codata.k
    electron_volt: float = codata.electron_volt

    def __post_init__(self):
        for name in ('G', 'hbar', 'c', 'k_B', 'electron_volt'):
            value = getattr(self, name)
            if not (value > 0 and math.isfinite(value)):
                raise DomainError(name, value, 'a positive finite constant')

    @classmethod
    def natural(cls) -> 'Constants':
        """Planck units: every fundamental constant is one."""
        return cls(G=1.0, hbar=1.0, c=1.0, k_B=1.0, electron_volt=1.0)

    @property
    def l_p(self) -> float:
        return math.sqrt(self.hbar * self.G / self.c ** 3)

    @property
    def t_p(self) -> float:
        return self.l_p / self.c

    @property
    def m_p(self) -> float:
        return math.sqrt(self.hbar * self.c / self.G)

    @property
    def T_p(self) -> float:
        return self.m_p * self.c ** 2 / self.k_B

    # eV <-> Kelvin

    def ev_to_kelvin(self, energy_ev: float) -> float:
        return energy_ev * self.electron_volt / self.k_B

    def kelvin_to_ev(self, temperature: float) -> float:
        return temperature * self.k_B / self.electron_volt

    # SI <-> Planck

    def seconds_to_planck(self, seconds: float) -> float:
        return seconds / self.t_p

    def planck_to_seconds(self, ticks: float) -> float:
        return ticks * self.t_p

    def meters_to_planck(self, meters: float) -> float:
        return meters / self.l_p

    def planck_to_meters(self, lengths: float) -> float:
        return lengths * self.l_p

    def kg_to_planck(self, kilograms: float) -> float:
        return kilograms / self.m_p

    def planck_to_kg(self, masses: float) -> float:
        return masses * self.m_p

    def kelvin_to_planck(self, kelvin: float) -> float:
        return kelvin / self.T_p

    def planck_to_kelvin(self, temperature: float) -> float:
        return temperature * self.T_p

    def as_dict(self) -> Dict[str, float]:
        return asdict(self)


def planck_identities(constants: Constants) -> Dict[str, Dict[str, float]]:
    """
    Check the defining Planck identities of a constant set.

    Args:
        constants: Constant set to check

    Returns:
        Dict keyed by identity name with the relative residual and a pass flag
    """
    checks = {
        'l_p': (constants.l_p, math.sqrt(constants.hbar * constants.G / constants.c ** 3)),
        't_p': (constants.t_p * constants.c, constants.l_p),
        'm_p': (constants.m_p, math.sqrt(constants.hbar * constants.c / constants.G)),
    }
    report = {}
    for name, (value, expected) in checks.items():
        residual = abs(value - expected) / abs(expected)
        report[name] = {'residual': residual, 'passed': residual <= IDENTITY_RTOL}
    return report


def constants_document(constants: Constants) -> Dict[str, object]:
    """JSON document for the `constants` subcommand."""
    identities = planck_identities(constants)
    return {
        'g': constants.G,
        'hbar': constants.hbar,
        'c': constants.c,
        'k_b': constants.k_B,
        'l_p': constants.l_p,
        't_p': constants.t_p,
        'm_p': constants.m_p,
        't_planck_kelvin': constants.T_p,
        't_quantum_kelvin': T_QUANTUM,
        't_park_kelvin': T_PARK,
        'e_critical_ev': E_CRITICAL_EV,
        'identities': identities,
        'success': all(item['passed'] for item in identities.values()),
    }


def redshift(v: float) -> float:
    """
    Relativistic Doppler redshift for a recession velocity.

    Args:
        v: Velocity as a fraction of c, strictly inside (-1, 1)

    Returns:
        Z = sqrt((1 + v) / (1 - v)) - 1
    """
    if not -1.0 < v < 1.0:
        raise DomainError('v', v, '-1 < v < 1 (superluminal input)')
    # 1 - v is exact for v in [0.5, 1), so the ratio keeps full precision near 1
    return math.sqrt((1.0 + v) / (1.0 - v)) - 1.0


def redshift_inverse(z: float) -> float:
    """Velocity fraction whose redshift is z."""
    if not z > -1.0:
        raise DomainError('z', z, 'z > -1')
    stretch = (1.0 + z) ** 2
    return (stretch - 1.0) / (stretch + 1.0)


def comoving_distance(a: float, d_now: float) -> float:
    """Proper distance a * D_now of a comoving separation D_now today."""
    if not a > 0:
        raise DomainError('a', a, 'a > 0')
    if d_now < 0:
        raise DomainError('d_now', d_now, 'd_now >= 0')
    return a * d_now
