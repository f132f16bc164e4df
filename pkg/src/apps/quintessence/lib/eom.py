"""
Quintessence equation of motion coupled to baryonic matter.

    phi'' (1 + kappa) + 3 H phi' (1 + kappa) + dV/dphi = 0,
    kappa = c_tilde T^2 g_b / (6 M^2)

with V the axion-contribution potential. Temperatures are in Kelvin and enter
kappa in Planck units; H, M, m and times are natural Planck units.
"""

import cmath
import logging
import math

from dataclasses import dataclass, replace
from typing import Dict, List, Optional

import numpy as np
from scipy import integrate, optimize

from apps.core.exceptions import DomainError, SingularityError, StiffnessError
from apps.core.lib.units import Constants
from apps.fields.lib.axion import AxionParams, axion_amplitude, axion_contribution

logger = logging.getLogger(__name__)

ROOT_MODES = ('exact', 'decoupled', 'half-damped')
ROOT_MODE_ALIASES = {'paper-eq75': 'decoupled', 'paper-eq80': 'half-damped'}
STIFFNESS_FORMS = ('coupled', 'full')
CASES = ('I', 'II', 'III', 'IV')

# |discriminant| at or below this fraction of 9 H^2 is a repeated root
CRITICAL_RTOL = 1.0e-12

_CODATA = Constants()


@dataclass(frozen=True)
class EomParams:
    c_tilde: float = 1.0
    M: float = 1.0
    g_b: float = 100.0
    T: float = 1.0e13
    H: float = 1.0
    m: float = 0.1
    f_axion: float = 0.0
    phi_c: float = 0.0

    def __post_init__(self):
        for name in ('M', 'g_b', 'T', 'H'):
            value = getattr(self, name)
            if not value > 0:
                raise DomainError(name, value, f'{name} > 0')
        if not self.f_axion >= 0:
            raise DomainError('f_axion', self.f_axion, 'f_axion >= 0')
        if self.c_tilde < 0:
            raise DomainError('c_tilde', self.c_tilde, 'c_tilde >= 0')

    @property
    def kappa(self) -> float:
        """Baryon coupling c_tilde T^2 g_b / 6 M^2 with T in Planck units."""
        T = _CODATA.kelvin_to_planck(self.T)
        return self.c_tilde * T ** 2 * self.g_b / (6.0 * self.M ** 2)

    def stiffness(self, form: str = 'coupled') -> float:
        """
        Restoring coefficient k of p^2 + 3 H p + k = 0.

        'coupled' is (m^2 + f) / kappa, the high-temperature form where the
        coupling dominates the inertia. 'full' is (m^2 + f) / (1 + kappa),
        the coefficient of the linearized equation of motion.
        """
        spring = self.m ** 2 + self.f_axion
        if form == 'coupled':
            kappa = self.kappa
            if kappa == 0.0:
                raise SingularityError(
                    'c_tilde T^2 g_b vanishes', c_tilde=self.c_tilde, T=self.T, g_b=self.g_b,
                )
            return spring / kappa
        if form == 'full':
            return spring / (1.0 + self.kappa)
        raise DomainError('form', form, f'one of {STIFFNESS_FORMS}')


@dataclass(frozen=True)
class RootPair:
    """p1 is the slow root (largest real part), p2 the fast one."""

    p1: complex
    p2: complex
    discriminant: float
    regime: str
    k: float
    mode: str = 'exact'

    @property
    def decay_rate(self) -> float:
        return max(self.p1.real, self.p2.real)

    def as_row(self) -> Dict[str, object]:
        return {
            're_p1': self.p1.real,
            'im_p1': self.p1.imag,
            're_p2': self.p2.real,
            'im_p2': self.p2.imag,
            'discriminant': self.discriminant,
            'regime': self.regime,
        }


@dataclass(frozen=True)
class FieldTrajectory:
    times: np.ndarray
    phi: np.ndarray
    phi_dot: np.ndarray
    case: Optional[str] = None

    def __post_init__(self):
        if not (self.times.shape == self.phi.shape == self.phi_dot.shape):
            raise DomainError('phi', self.phi.shape, 'one sample per time')
        if self.times.size > 1 and not np.all(np.diff(self.times) > 0):
            raise DomainError('times', 'non-increasing', 'strictly increasing times')

    def rows(self) -> List[Dict[str, float]]:
        return [
            {'t': float(t), 'phi': float(phi), 'phi_dot': float(phi_dot)}
            for t, phi, phi_dot in zip(self.times, self.phi, self.phi_dot)
        ]


@dataclass(frozen=True)
class RegimeThresholds:
    """Temperature and coupling thresholds separating the four cases (K, dimensionless)."""

    T_low: float = 1.0e3
    T_high: float = 1.0e12
    c_small: float = 1.0e-3
    f_negligible: float = 1.0e-6
    t_slow_roll: Optional[float] = None

    def __post_init__(self):
        if not 0 < self.T_low < self.T_high:
            raise DomainError('T_low', self.T_low, f'0 < T_low < T_high ({self.T_high})')


def regime_label(discriminant: float, H: float) -> str:
    scale = CRITICAL_RTOL * 9.0 * H ** 2
    if abs(discriminant) <= scale:
        return 'critical'
    return 'oscillatory' if discriminant < 0 else 'overdamped'


def quadratic_roots(H: float, k: float) -> RootPair:
    """
    Roots of p^2 + 3 H p + k = 0.

    Real roots use the cancellation-free form q = -(3H + sqrt(disc)) / 2,
    roots q and k / q.
    """
    b = 3.0 * H
    discriminant = b * b - 4.0 * k
    regime = regime_label(discriminant, H)
    if regime == 'critical':
        p = complex(-0.5 * b)
        return RootPair(p1=p, p2=p, discriminant=discriminant, regime=regime, k=k)
    if regime == 'oscillatory':
        omega = 0.5 * math.sqrt(-discriminant)
        return RootPair(
            p1=complex(-0.5 * b, omega), p2=complex(-0.5 * b, -omega),
            discriminant=discriminant, regime=regime, k=k,
        )
    q = -0.5 * (b + math.copysign(math.sqrt(discriminant), b))
    fast, slow = q, k / q
    if slow.real < fast.real:
        fast, slow = slow, fast
    return RootPair(p1=complex(slow), p2=complex(fast), discriminant=discriminant, regime=regime, k=k)


def characteristic_roots(p: EomParams, mode: str = 'exact', form: str = 'coupled') -> RootPair:
    """
    Characteristic rates of the linearized equation of motion.

    exact solves p^2 + 3 H p + k = 0. The decoupled and half-damped modes
    return the two textbook approximations unchanged: {-3H + k, -k} and
    -(3H/2)[1 -/+ sqrt(1 - k/3H)]. Their regime label still comes from the
    exact discriminant. The aliases in ROOT_MODE_ALIASES resolve to these
    names, which is what RootPair.mode carries.
    """
    mode = ROOT_MODE_ALIASES.get(mode, mode)
    k = p.stiffness(form)
    exact = quadratic_roots(p.H, k)
    if mode == 'exact':
        return exact
    H = p.H
    if mode == 'decoupled':
        p1, p2 = complex(-3.0 * H + k), complex(-k)
    elif mode == 'half-damped':
        root = cmath.sqrt(1.0 - k / (3.0 * H))
        p1, p2 = -1.5 * H * (1.0 - root), -1.5 * H * (1.0 + root)
    else:
        raise DomainError('mode', mode, f'one of {ROOT_MODES} or {tuple(ROOT_MODE_ALIASES)}')
    if p1.real < p2.real:
        p1, p2 = p2, p1
    return RootPair(p1=p1, p2=p2, discriminant=exact.discriminant, regime=exact.regime, k=k, mode=mode)


def companion_roots(H: float, k: float) -> np.ndarray:
    """Eigenvalues of the companion matrix of p^2 + 3 H p + k."""
    return np.linalg.eigvals(np.array([[-3.0 * H, -k], [1.0, 0.0]]))


def classify_regime(T: float, t: float, p: EomParams,
                    thresholds: RegimeThresholds = RegimeThresholds()) -> str:
    """
    Case label of the equation of motion at temperature T (K) and time t.

    I: cold or late slow roll. II / III: hot, with c_tilde large or small.
    IV: the band between with a non-negligible axion amplitude; otherwise
    the band falls back to II / III by coupling strength.
    """
    if not T > 0:
        raise DomainError('T', T, 'T > 0')
    if not t > 0:
        raise DomainError('t', t, 't > 0')
    late = thresholds.t_slow_roll is not None and t >= thresholds.t_slow_roll
    if late or T < thresholds.T_low:
        return 'I'
    weak = p.c_tilde <= thresholds.c_small
    if T < thresholds.T_high and p.f_axion > thresholds.f_negligible * p.m ** 2:
        return 'IV'
    return 'III' if weak else 'II'


def _potential_slope(p: EomParams, quintic: bool = False):
    def slope(phi: float) -> float:
        contribution = axion_contribution(phi, p.f_axion, p.m, p.phi_c)
        return contribution.dV_quintic if quintic else contribution.dV
    return slope


def _solve(rhs, p: EomParams, y0: List[float], t_end: float, rtol: float, atol: float,
           samples: int, method: str = 'DOP853'):
    if not t_end > 0:
        raise DomainError('t_end', t_end, 't_end > 0')
    times = np.linspace(0.0, t_end, samples)
    solution = integrate.solve_ivp(rhs, (0.0, t_end), y0, method=method, t_eval=times,
                                   rtol=rtol, atol=atol)
    if solution.status != 0:
        reached = float(solution.t[-1]) if solution.t.size else 0.0
        logger.error(f"EOM integration stopped at t={reached}: {solution.message}")
        raise StiffnessError(
            f"Step size collapsed: {solution.message}", t_reached=reached, t_end=t_end,
        )
    return solution


def integrate_eom(p: EomParams, phi0: float, phidot0: float, t_end: float,
                  rtol: float = 1.0e-10, atol: float = 1.0e-12, samples: int = 501,
                  quintic: bool = False) -> FieldTrajectory:
    """
    Integrate the equation of motion with H held fixed.

    Args:
        p: Equation parameters
        phi0: Initial field
        phidot0: Initial field velocity
        t_end: End time (natural units)
        rtol: Relative local error tolerance
        atol: Absolute local error tolerance
        samples: Number of output samples on [0, t_end]
        quintic: Use the truncated quintic expansion of dV instead of the exact derivative

    Raises:
        StiffnessError: If the adaptive step collapses
    """
    inertia = 1.0 + p.kappa
    slope = _potential_slope(p, quintic)
    friction = 3.0 * p.H

    def rhs(_t, y):
        phi, phi_dot = y
        return [phi_dot, -friction * phi_dot - slope(phi) / inertia]

    solution = _solve(rhs, p, [phi0, phidot0], t_end, rtol, atol, samples)
    return FieldTrajectory(times=solution.t, phi=solution.y[0], phi_dot=solution.y[1])


def integrate_slow_roll(p: EomParams, phi0: float, t_end: float, rtol: float = 1.0e-10,
                        atol: float = 1.0e-12, samples: int = 501) -> FieldTrajectory:
    """Case I: drop phi'' and solve 3 H phi' (1 + kappa) = -dV/dphi."""
    damping = 3.0 * p.H * (1.0 + p.kappa)
    slope = _potential_slope(p)

    def rhs(_t, y):
        return [-slope(y[0]) / damping]

    solution = _solve(rhs, p, [phi0], t_end, rtol, atol, samples)
    phi = solution.y[0]
    phi_dot = np.array([-slope(value) / damping for value in phi])
    return FieldTrajectory(times=solution.t, phi=phi, phi_dot=phi_dot, case='I')


def closed_form_trajectory(p: EomParams, phi0: float, phidot0: float, times) -> FieldTrajectory:
    """
    Solution of the linearized equation c1 e^{p1 t} + c2 e^{p2 t} + phi_eq.

    phi_eq = m^2 phi_C / (m^2 + f); with f = 0 the equation is exactly linear
    and phi_eq = phi_C.
    """
    times = np.asarray(times, dtype=float)
    spring = p.m ** 2 + p.f_axion
    if spring == 0.0:
        equilibrium = phi0
    else:
        equilibrium = p.m ** 2 * p.phi_c / spring
    roots = characteristic_roots(p, mode='exact', form='full')
    x0 = phi0 - equilibrium

    if roots.regime == 'critical':
        rate = roots.p1.real
        growth = np.exp(rate * times)
        slope = phidot0 - rate * x0
        phi = (x0 + slope * times) * growth
        phi_dot = (slope + rate * (x0 + slope * times)) * growth
    else:
        p1, p2 = roots.p1, roots.p2
        c1 = (phidot0 - p2 * x0) / (p1 - p2)
        c2 = x0 - c1
        e1, e2 = np.exp(p1 * times), np.exp(p2 * times)
        phi = np.real(c1 * e1 + c2 * e2)
        phi_dot = np.real(c1 * p1 * e1 + c2 * p2 * e2)
    return FieldTrajectory(times=times, phi=phi + equilibrium, phi_dot=phi_dot)


def lyapunov_energy(trajectory: FieldTrajectory, p: EomParams) -> np.ndarray:
    """phi'^2 (1 + kappa) / 2 + m^2 (phi - phi_C)^2 / 2 along a trajectory."""
    inertia = 1.0 + p.kappa
    return 0.5 * inertia * trajectory.phi_dot ** 2 + 0.5 * p.m ** 2 * (trajectory.phi - p.phi_c) ** 2


def epsilon_ratio(trajectory: FieldTrajectory, phi_c: float, phi_initial: float,
                  t_probe: Optional[float] = None) -> float:
    """|phi(t_probe) - phi_C| / |phi_initial|, at the last sample by default."""
    if phi_initial == 0.0:
        raise DomainError('phi_initial', phi_initial, 'phi_initial != 0')
    if t_probe is None:
        value = trajectory.phi[-1]
    else:
        value = float(np.interp(t_probe, trajectory.times, trajectory.phi))
    return abs(value - phi_c) / abs(phi_initial)


# Per-case operating points: temperature (K) and coupling override
CASE_POINTS = {
    'I': {'T': 1.0},
    'II': {'T': 1.0e13},
    'III': {'T': 1.0e13, 'c_tilde': 1.0e-6},
    'IV': {'T': 1.0e8},
}


def case_params(case: str, template: EomParams, f_case_iv: float,
                thresholds: RegimeThresholds = RegimeThresholds()) -> EomParams:
    """Template parameters moved to the operating point of one case."""
    if case not in CASES:
        raise DomainError('case', case, f'one of {CASES}')
    changes = dict(CASE_POINTS[case])
    if case == 'II':
        changes['c_tilde'] = max(template.c_tilde, 10.0 * thresholds.c_small)
    if case == 'IV':
        changes['f_axion'] = f_case_iv
    else:
        changes['f_axion'] = 0.0
    return replace(template, **changes)


def integrate_case(case: str, template: EomParams, phi0: float, phidot0: float, t_end: float,
                   f_case_iv: float = 0.01, thresholds: RegimeThresholds = RegimeThresholds(),
                   rtol: float = 1.0e-10, atol: float = 1.0e-12,
                   samples: int = 501) -> FieldTrajectory:
    """
    Evolve the field under the equation of one case.

    I drops phi''. II and III keep the full linear equation. IV uses the
    truncated quintic expansion of the axion slope.
    """
    p = case_params(case, template, f_case_iv, thresholds)
    label = classify_regime(p.T, 1.0, p, thresholds=thresholds)
    if label != case:
        logger.warning(f"Case {case} operating point classifies as {label}")
    logger.info(f"Integrating case {case} at T={p.T} K, c_tilde={p.c_tilde}, f={p.f_axion}")
    if case == 'I':
        trajectory = integrate_slow_roll(p, phi0, t_end, rtol=rtol, atol=atol, samples=samples)
    else:
        trajectory = integrate_eom(p, phi0, phidot0, t_end, rtol=rtol, atol=atol,
                                   samples=samples, quintic=case == 'IV')
    return replace(trajectory, case=case)


@dataclass(frozen=True)
class BifurcationReport:
    rows: List[Dict[str, object]]
    found: bool
    T_crit: Optional[float]
    crossings: List[float]
    transition: Optional[str]
    decay_rate: Optional[float]
    message: str

    def summary(self) -> Dict[str, object]:
        return {
            'found': self.found,
            'unique': len(self.crossings) == 1,
            'T_crit': self.T_crit,
            'crossings': self.crossings,
            'transition': self.transition,
            'decay_rate': self.decay_rate,
            'message': self.message,
        }


def _discriminant_at(T: float, template: EomParams, axion: AxionParams) -> float:
    p = replace(template, T=T, f_axion=axion_amplitude(T, axion))
    return quadratic_roots(p.H, p.stiffness()).discriminant


def bifurcation_scan(T_grid, template: EomParams, axion: AxionParams,
                     rel_tol: float = 1.0e-6) -> BifurcationReport:
    """
    Track the characteristic roots across a temperature grid.

    Every sign change of the discriminant between grid neighbours is refined
    by bisection in ln T. The decay rate is max Re p at the hottest
    overdamped grid point.
    """
    grid = np.asarray(T_grid, dtype=float)
    if grid.ndim != 1 or grid.size == 0:
        raise DomainError('T_grid', grid.shape, 'a non-empty one-dimensional grid')
    if not np.all(grid > 0):
        raise DomainError('T_grid', 'non-positive temperature', 'T > 0')
    if grid.size > 1 and not np.all(np.diff(grid) > 0):
        raise DomainError('T_grid', 'not increasing', 'a strictly increasing grid')

    rows = []
    roots_by_T = []
    for T in grid:
        f = axion_amplitude(float(T), axion)
        p = replace(template, T=float(T), f_axion=f)
        roots = characteristic_roots(p)
        roots_by_T.append(roots)
        rows.append({'T': float(T), 'f_axion': f, **roots.as_row()})

    crossings = []
    for index in range(grid.size - 1):
        left, right = roots_by_T[index].discriminant, roots_by_T[index + 1].discriminant
        if left == 0.0:
            crossings.append(float(grid[index]))
            continue
        if left * right < 0:
            log_crit = optimize.bisect(
                lambda log_T: _discriminant_at(math.exp(log_T), template, axion),
                math.log(grid[index]), math.log(grid[index + 1]),
                xtol=0.1 * rel_tol, rtol=4.0 * np.finfo(float).eps,
            )
            crossings.append(math.exp(log_crit))

    if not crossings:
        logger.info(f"No discriminant sign change over {grid.size} grid points")
        return BifurcationReport(rows=rows, found=False, T_crit=None, crossings=[],
                                 transition=None, decay_rate=None,
                                 message='no bifurcation in range')

    T_crit = crossings[0]
    below = roots_by_T[0].regime
    above = roots_by_T[-1].regime
    overdamped = [roots for roots in roots_by_T if roots.regime == 'overdamped']
    decay_rate = overdamped[-1].decay_rate if overdamped else None
    if len(crossings) > 1:
        logger.warning(f"Discriminant changes sign {len(crossings)} times")
    logger.info(f"Bifurcation at T_crit={T_crit:.6e} K ({below} -> {above})")
    return BifurcationReport(
        rows=rows, found=True, T_crit=T_crit, crossings=crossings,
        transition=f'{below}->{above}', decay_rate=decay_rate,
        message='bifurcation located',
    )
