"""
Charged-shell metric coefficient, its temperature-driven slope eta(T) and the
bridge wavefunctional linking a prior contracting universe to the present one.

Radii and times are natural Planck units (r = 1 is one Planck length).
Temperatures are in Kelvin and enter through the vacuum-energy laws.
"""

import logging
import math

from dataclasses import dataclass, field, replace
from typing import Callable, Dict, List, Optional

import numpy as np

from apps.burst.lib.graviton import BurstConfig, burst_table
from apps.core.exceptions import DomainError, InputError
from apps.core.lib.units import Constants
from apps.vacuum.lib.vacuum_energy import LambdaModel, hh_amplitude, lambda_4d, lambda_5d

logger = logging.getLogger(__name__)

CoefficientFn = Callable[[float, float, float], float]

# Cold-branch Hartle-Hawking amplitude must fall below this
HH_COLD_LIMIT = 1.0e-10


def cyclic_c1(omega: float, t: float, r: float) -> float:
    return math.cos(omega * t) * math.exp(-r)


def cyclic_c2(omega: float, t: float, r: float) -> float:
    return math.sin(omega * t) ** 2 * math.exp(-r)


@dataclass(frozen=True)
class MetricParams:
    M: float = 0.0
    Q: float = 0.0
    lam: float = 0.0
    r_shell: float = 1.0

    def __post_init__(self):
        if not self.r_shell > 0:
            raise DomainError('r_shell', self.r_shell, 'r_shell > 0')


@dataclass(frozen=True)
class BridgeConfig:
    """
    Amplitude A, frequency omega and the coefficient functions C1(omega, t, r), C2(omega, t, r).

    The defaults cos(omega t) e^-r and sin^2(omega t) e^-r are even in t.
    time_samples is the size of the [-1, 1] time grid the domination and
    symmetry checks run over.
    """

    A: float = 1.0
    omega: float = 1.0
    c1_fn: CoefficientFn = field(default=cyclic_c1, compare=False)
    c2_fn: CoefficientFn = field(default=cyclic_c2, compare=False)
    time_samples: int = 65
    domination_threshold: float = 1.0

    def __post_init__(self):
        if self.time_samples < 3:
            raise DomainError('time_samples', self.time_samples, 'time_samples >= 3')
        if not self.domination_threshold > 0:
            raise DomainError('domination_threshold', self.domination_threshold, '> 0')
        probes = [(t, r) for t in (-0.7, 0.3, 1.1) for r in (0.5, 1.0, 2.0)]
        if all(self.c1_fn(self.omega, t, r) == self.c2_fn(self.omega, t, r) for t, r in probes):
            raise DomainError('c2_fn', 'c1_fn', 'C1 and C2 differ as functions')

    @property
    def time_grid(self) -> np.ndarray:
        return np.linspace(-1.0, 1.0, self.time_samples)


@dataclass(frozen=True)
class EtaValue:
    eta: float
    slope: float


@dataclass(frozen=True)
class BridgeTerms:
    """
    The two terms of Psi = -A eta^2 C1 + A eta omega^2 C2.

    eta^2 overflows near the quantum threshold, so each term also carries
    the natural log of its magnitude (-inf for an exactly zero term).
    """

    eta: float
    c1: float
    c2: float
    eta_squared_term: float
    eta_term: float
    log_eta_squared_term: float
    log_eta_term: float

    @property
    def amplitude(self) -> float:
        return self.eta_squared_term + self.eta_term

    @property
    def log_ratio(self) -> float:
        """ln |eta^2 term| - ln |eta term|."""
        if self.log_eta_term == -math.inf:
            return math.inf
        return self.log_eta_squared_term - self.log_eta_term


def metric_f(r: float, p: MetricParams) -> float:
    """1 - 2M/r + Q^2/r^2 - (lambda/3) r^2."""
    if not r > 0:
        raise DomainError('r', r, 'r > 0')
    return 1.0 - 2.0 * p.M / r + p.Q ** 2 / r ** 2 - p.lam / 3.0 * r ** 2


def eta(T: float, model: LambdaModel, r: float = 1.0) -> EtaValue:
    """eta(T) = -2 lambda_4d(T) / 3 with the slope estimate dF/dr ~ eta r."""
    if not r > 0:
        raise DomainError('r', r, 'r > 0')
    value = -2.0 * lambda_4d(T, model) / 3.0
    return EtaValue(eta=value, slope=value * r)


def _log_abs(*factors: float) -> float:
    if any(factor == 0.0 for factor in factors):
        return -math.inf
    return sum(math.log(abs(factor)) for factor in factors)


def _coefficient(fn: CoefficientFn, name: str, omega: float, t: float, r: float) -> float:
    value = float(fn(omega, t, r))
    if not math.isfinite(value):
        raise InputError(f"{name}({omega}, {t}, {r}) is not finite", coefficient=name, t=t, r=r)
    return value


def bridge_terms(T: float, t: float, r: float, cfg: BridgeConfig, model: LambdaModel) -> BridgeTerms:
    if not T > 0:
        raise DomainError('T', T, 'T > 0')
    e = eta(T, model, r).eta
    c1 = _coefficient(cfg.c1_fn, 'c1_fn', cfg.omega, t, r)
    c2 = _coefficient(cfg.c2_fn, 'c2_fn', cfg.omega, t, r)
    w2 = cfg.omega ** 2
    return BridgeTerms(
        eta=e,
        c1=c1,
        c2=c2,
        eta_squared_term=-(cfg.A * c1) * e * e,
        eta_term=(cfg.A * c2) * w2 * e,
        log_eta_squared_term=_log_abs(cfg.A, e, e, c1),
        log_eta_term=_log_abs(cfg.A, e, w2, c2),
    )


def bridge_amplitude(T: float, t: float, r: float, cfg: BridgeConfig, model: LambdaModel) -> float:
    """Psi(T) = -A eta^2 C1(omega, t, r) + A eta omega^2 C2(omega, t, r)."""
    return bridge_terms(T, t, r, cfg, model).amplitude


@dataclass(frozen=True)
class LinkResult:
    link: str
    claim: str
    passed: bool
    detail: Dict[str, object]


@dataclass(frozen=True)
class ChainReport:
    T_max: float
    links: List[LinkResult]

    @property
    def passed(self) -> bool:
        return all(link.passed for link in self.links)

    @property
    def failed_links(self) -> List[str]:
        return [link.link for link in self.links if not link.passed]

    def as_dict(self) -> Dict[str, object]:
        return {
            'T_max': self.T_max,
            'passed': self.passed,
            'failed_links': self.failed_links,
            'links': [
                {'link': link.link, 'claim': link.claim, 'passed': link.passed, 'detail': link.detail}
                for link in self.links
            ],
        }


def _metric_link(T_max: float, metric: MetricParams, model: LambdaModel, threshold: float) -> LinkResult:
    lam = lambda_4d(T_max, model)
    r = metric.r_shell
    vacuum_term = lam / 3.0 * r ** 2
    rest = abs(1.0 - 2.0 * metric.M / r + metric.Q ** 2 / r ** 2)
    ratio = math.inf if rest == 0.0 else vacuum_term / rest
    f = metric_f(r, replace(metric, lam=lam))
    return LinkResult(
        link='i',
        claim='vacuum term dominates the metric coefficient at the shell radius',
        passed=ratio >= threshold,
        detail={'lambda_4d': lam, 'metric_f': f, 'vacuum_term': -vacuum_term, 'ratio': ratio},
    )


def _bridge_link(T_max: float, r: float, cfg: BridgeConfig, model: LambdaModel) -> LinkResult:
    e = eta(T_max, model, r).eta
    worst = math.inf
    symmetric = True
    for t in cfg.time_grid:
        terms = bridge_terms(T_max, float(t), r, cfg, model)
        mirror = bridge_terms(T_max, float(-t), r, cfg, model)
        if terms.c1 != mirror.c1 or terms.c2 != mirror.c2:
            symmetric = False
        if terms.c2 == 0.0 or cfg.omega == 0.0:
            ratio = math.inf
        else:
            ratio = abs(e) * abs(terms.c1) / (cfg.omega ** 2 * abs(terms.c2))
        worst = min(worst, ratio)
    dominated = cfg.A != 0.0 and e != 0.0 and worst >= cfg.domination_threshold
    return LinkResult(
        link='ii',
        claim='bridge amplitude is dominated by its eta^2 term and even in time',
        passed=dominated and symmetric,
        detail={'A': cfg.A, 'eta': e, 'min_ratio': worst, 'time_symmetric': symmetric},
    )


def _burst_link(T_max: float, burst: BurstConfig, constants: Constants) -> LinkResult:
    # Burst window tracks T_star.
    T_star = T_max / 3.0
    scaled = replace(burst, T_star=T_star, burst_temperature=burst.burst_temperature * (T_star / burst.T_star))
    rows = burst_table(scaled, constants)
    powers = [row.power_watts for row in rows]
    return LinkResult(
        link='iii',
        claim='graviton burst produces a non-zero power row',
        passed=any(power > 0 for power in powers),
        detail={
            'T_star': T_star,
            'burst_temperature': scaled.burst_temperature,
            'occupations': [row.occupation for row in rows],
            'powers': powers,
        },
    )


def _hartle_hawking_link(T_max: float, model: LambdaModel) -> LinkResult:
    cold = hh_amplitude(lambda_5d(T_max, model))
    capped = hh_amplitude(lambda_4d(T_max, model, post_burst=True))
    return LinkResult(
        link='iv',
        claim='Hartle-Hawking amplitude moves from ~0 on the 5-dim branch to > 1 after the cap',
        passed=cold.value <= HH_COLD_LIMIT and capped.value > 1.0,
        detail={
            'hh_5d': cold.value,
            'log_hh_5d': cold.log_value,
            'hh_capped': capped.value,
            'log_hh_capped': capped.log_value,
        },
    )


def theorem1_chain(T_max: float, cfg: BridgeConfig, model: LambdaModel, burst: BurstConfig,
                   metric: Optional[MetricParams] = None,
                   constants: Optional[Constants] = None) -> ChainReport:
    """
    Run the four-link chain metric domination -> bridge domination -> burst -> amplitude transition.

    Every link is evaluated even after an earlier one fails; failures are
    report content.
    """
    if not T_max > 0:
        raise DomainError('T_max', T_max, 'T_max > 0')
    metric = metric or MetricParams()
    constants = constants or Constants()
    links = [
        _metric_link(T_max, metric, model, cfg.domination_threshold),
        _bridge_link(T_max, metric.r_shell, cfg, model),
        _burst_link(T_max, burst, constants),
        _hartle_hawking_link(T_max, model),
    ]
    report = ChainReport(T_max=T_max, links=links)
    if report.passed:
        logger.info(f"Chain passed at T_max={T_max:.4e} K")
    else:
        logger.warning(f"Chain failed at T_max={T_max:.4e} K: links {report.failed_links}")
    return report
