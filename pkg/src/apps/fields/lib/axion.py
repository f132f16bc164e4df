"""
Axion mass and domain-wall potentials, the two-phase chaotic potentials and
the axion-contribution potential with its truncated quintic expansion.

Temperatures are in Kelvin; masses and fields in natural Planck units
(M_P = 1, so the default inflaton mass is m = 0.1).
"""

import logging
import math

from dataclasses import dataclass
from typing import NamedTuple

from apps.core.exceptions import DomainError

logger = logging.getLogger(__name__)

PHASES = ('pre-burst', 'post-burst')
POST_BURST_FORMS = ('bare', 'massive')


@dataclass(frozen=True)
class AxionParams:
    """
    Axion and inflaton parameters.

    f_cold and epsilon_plus pin the axion amplitude f[m_axion(T)]: it equals
    f_cold * m^2 at T_cold, falls as axion_mass(T)^2 above it and is clamped
    to [epsilon_plus, f_cold] * m^2.
    """

    m_a0: float = 1.0e-3
    lambda_qcd: float = 2.3e12
    f_pq_over_n: float = 1.0
    m: float = 0.1
    phi_c: float = 0.0
    phi_star: float = 1.0
    T_cold: float = 2.0
    f_cold: float = 100.0
    epsilon_plus: float = 1.0e-12

    def __post_init__(self):
        for name in ('m_a0', 'lambda_qcd', 'f_pq_over_n', 'm', 'T_cold', 'f_cold', 'epsilon_plus'):
            value = getattr(self, name)
            if not value > 0:
                raise DomainError(name, value, f'{name} > 0')
        if not self.epsilon_plus < self.f_cold:
            raise DomainError('epsilon_plus', self.epsilon_plus, f'epsilon_plus < f_cold ({self.f_cold})')


class AxionContribution(NamedTuple):
    V: float
    dV: float
    dV_quintic: float


def _check_temperature(T: float) -> None:
    if not T > 0:
        raise DomainError('T', T, 'T > 0')


def axion_mass(T: float, p: AxionParams) -> float:
    """Temperature-suppressed axion mass 0.1 m_a0 (Lambda_QCD / T)^3.7."""
    _check_temperature(T)
    return 0.1 * p.m_a0 * (p.lambda_qcd / T) ** 3.7


def axion_amplitude(T: float, p: AxionParams) -> float:
    """f[m_axion(T)] = f_cold m^2 (m_a(T) / m_a(T_cold))^2 clamped to [epsilon_plus, f_cold] m^2."""
    _check_temperature(T)
    ratio = (p.T_cold / T) ** 7.4
    scale = min(p.f_cold, max(p.epsilon_plus, p.f_cold * ratio))
    return scale * p.m ** 2


def transition_temperature(p: AxionParams) -> float:
    """Temperature above which the axion amplitude sits on its epsilon_plus floor."""
    return p.T_cold * (p.f_cold / p.epsilon_plus) ** (1.0 / 7.4)


def axion_wall(a_field: float, T: float, p: AxionParams) -> float:
    """Domain-wall potential m_a(T)^2 (f/N)^2 (1 - cos(a / (f/N)))."""
    scale = p.f_pq_over_n
    return axion_mass(T, p) ** 2 * scale ** 2 * (1.0 - math.cos(a_field / scale))


def wall_amplitude(T: float, p: AxionParams) -> float:
    """Peak of the wall potential, reached at a = pi f/N."""
    return 2.0 * axion_mass(T, p) ** 2 * p.f_pq_over_n ** 2


def chaotic_potentials(phi: float, T: float, phase: str, p: AxionParams,
                       post_burst_form: str = 'bare') -> float:
    """
    Two-phase chaotic potential.

    Before the burst: (f/2)(1 - cos phi) + (m^2/2)(phi - phi*)^2 with f the
    axion amplitude. After: (1/2)(phi - phi_C)^2, or (m^2/2)(phi - phi_C)^2
    with post_burst_form='massive'.
    """
    if phase == 'pre-burst':
        f = axion_amplitude(T, p)
        return 0.5 * f * (1.0 - math.cos(phi)) + 0.5 * p.m ** 2 * (phi - p.phi_star) ** 2
    if phase == 'post-burst':
        if post_burst_form not in POST_BURST_FORMS:
            raise DomainError('post_burst_form', post_burst_form, f'one of {POST_BURST_FORMS}')
        coefficient = p.m ** 2 if post_burst_form == 'massive' else 1.0
        return 0.5 * coefficient * (phi - p.phi_c) ** 2
    raise DomainError('phase', phase, f'one of {PHASES}')


def axion_to_quadratic(T: float, p: AxionParams) -> float:
    """Pre-burst axion term over the quadratic term at phi = phi* + 1."""
    phi = p.phi_star + 1.0
    axion_term = 0.5 * axion_amplitude(T, p) * (1.0 - math.cos(phi))
    return axion_term / (0.5 * p.m ** 2)


def v_axion_contri(phi: float, T: float, p: AxionParams) -> AxionContribution:
    """
    Axion-contribution potential f (1 - cos phi) + (m^2/2)(phi - phi_C)^2.

    dV_quintic keeps the fixed expansion coefficients phi^5/125 and phi^3/6.
    """
    return axion_contribution(phi, axion_amplitude(T, p), p.m, p.phi_c)


def axion_contribution(phi: float, f: float, m: float, phi_c: float) -> AxionContribution:
    m2 = m ** 2
    V = f * (1.0 - math.cos(phi)) + 0.5 * m2 * (phi - phi_c) ** 2
    dV = f * math.sin(phi) + m2 * (phi - phi_c)
    dV_quintic = f * phi ** 5 / 125.0 - f * phi ** 3 / 6.0 + ((m2 + f) * phi - m2 * phi_c)
    return AxionContribution(V=V, dV=dV, dV_quintic=dV_quintic)
