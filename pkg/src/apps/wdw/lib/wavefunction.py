"""
Hermite polynomials, oscillator eigenfunctions and the product wavefunction
over the scale factor and the graviton mode amplitudes.

Sign convention: the scale sector [d^2/da^2 - a^2 - lambda] has the Gaussian
family H_p(a) exp(-a^2/2) as eigenfunctions with lambda = -(2p + 1); the
mode sector [d^2/dd^2 - n^2 d^2 + lambda_n] has H_q(sqrt(n) d) exp(-n d^2/2)
with lambda_n = n (2q + 1).
"""

import logging
import math

from dataclasses import dataclass
from typing import List, Optional, Sequence

import numpy as np

from apps.core.exceptions import DomainError, InputError, ResolutionError

logger = logging.getLogger(__name__)

# Grid points required per oscillation period 2 pi / sqrt(|lambda|)
POINTS_PER_OSCILLATION = 16

# Rows of the scale grid processed per outer product
RESIDUAL_CHUNK = 256


def hermite(p: int, x):
    """
    Physicists' Hermite polynomial H_p(x) by the three-term recurrence.

    Integer x gives an exact Python int; floats and numpy arrays give floats.
    """
    if isinstance(p, bool) or not isinstance(p, (int, np.integer)) or p < 0:
        raise DomainError('p', p, 'a non-negative integer degree')
    p = int(p)
    if isinstance(x, (int, np.integer)) and not isinstance(x, bool):
        x = int(x)
        previous, current = 1, 2 * x
    else:
        x = np.asarray(x, dtype=float) if not isinstance(x, float) else x
        previous, current = x * 0.0 + 1.0, 2.0 * x
    if p == 0:
        return previous
    for degree in range(1, p):
        previous, current = current, 2 * x * current - 2 * degree * previous
    return current


def sho_eigenfunction(k: int, x):
    """Normalized oscillator eigenfunction (2^k k! sqrt(pi))^(-1/2) H_k(x) exp(-x^2/2)."""
    if k < 0:
        raise DomainError('k', k, 'k >= 0')
    log_norm = -0.5 * (k * math.log(2.0) + math.lgamma(k + 1) + 0.5 * math.log(math.pi))
    x = np.asarray(x, dtype=float)
    value = hermite(k, x) * np.exp(log_norm - 0.5 * x ** 2)
    return float(value) if value.ndim == 0 else value


@dataclass(frozen=True)
class ScaleSpec:
    """Scale sector: Hermite degree p and eigenvalue (matched -(2p + 1) when unset)."""

    p: int = 0
    lambda_scale: Optional[float] = None

    def __post_init__(self):
        if self.p < 0:
            raise DomainError('p', self.p, 'p >= 0')

    @property
    def eigenvalue(self) -> float:
        return -(2.0 * self.p + 1.0) if self.lambda_scale is None else self.lambda_scale


@dataclass(frozen=True)
class ModeSpec:
    """One graviton mode: index n, excitation level p_n (eigenfunction level 2 p_n) and amplitude d_n."""

    n: int = 1
    p_n: int = 0
    lambda_n: Optional[float] = None
    d_n: float = 0.0

    def __post_init__(self):
        if self.n < 1:
            raise DomainError('n', self.n, 'n >= 1')
        if self.p_n < 0:
            raise DomainError('p_n', self.p_n, 'p_n >= 0')

    @property
    def level(self) -> int:
        return 2 * self.p_n

    @property
    def eigenvalue(self) -> float:
        if self.lambda_n is None:
            return self.n * (2.0 * self.level + 1.0)
        return self.lambda_n

    def factor(self, d, literal_argument: bool = False):
        """psi_{2 p_n} at sqrt(n) d, or at n d^2 with literal_argument."""
        d = np.asarray(d, dtype=float)
        argument = self.n * d ** 2 if literal_argument else math.sqrt(self.n) * d
        return sho_eigenfunction(self.level, argument)


def assemble_wavefunction(scale: ScaleSpec, modes: Sequence[ModeSpec], a_bar: float,
                          d_values: Optional[Sequence[float]] = None,
                          literal_argument: bool = False) -> float:
    """
    H_p(a) exp(-a^2/2) times the product of the mode eigenfunctions.

    Args:
        scale: Scale-sector degree
        modes: Mode list
        a_bar: Scaled scale factor
        d_values: One amplitude per mode; each mode's d_n when omitted
        literal_argument: Evaluate modes at n d^2 instead of sqrt(n) d

    Raises:
        InputError: If d_values does not match the mode list
    """
    if d_values is None:
        d_values = [mode.d_n for mode in modes]
    if len(d_values) != len(modes):
        raise InputError(
            f"Expected {len(modes)} mode amplitudes, got {len(d_values)}",
            modes=len(modes), d_values=len(d_values),
        )
    value = float(hermite(scale.p, float(a_bar))) * math.exp(-0.5 * a_bar ** 2)
    for mode, d in zip(modes, d_values):
        value *= float(mode.factor(d, literal_argument))
    return value


def _second_difference(values: np.ndarray, step: float) -> np.ndarray:
    return (values[2:] - 2.0 * values[1:-1] + values[:-2]) / step ** 2


def _uniform_step(grid: np.ndarray, name: str) -> float:
    if grid.ndim != 1 or grid.size < 3:
        raise InputError(f"{name} needs at least three points", grid=name)
    steps = np.diff(grid)
    if not np.all(steps > 0) or not np.allclose(steps, steps[0], rtol=1.0e-9, atol=0.0):
        raise InputError(f"{name} must be uniform and increasing", grid=name)
    return float(steps[0])


def _check_resolution(step: float, eigenvalue: float, name: str) -> None:
    if eigenvalue == 0.0:
        return
    period = 2.0 * math.pi / math.sqrt(abs(eigenvalue))
    if period / step < POINTS_PER_OSCILLATION:
        raise ResolutionError(
            f"{name} resolves {period / step:.1f} points per oscillation",
            grid=name, step=step, required=POINTS_PER_OSCILLATION,
        )


def sho_decomposition_residual(psi_scale, scale: ScaleSpec, modes: Sequence[ModeSpec], a_grid,
                               d_grids: Sequence, literal_argument: bool = False) -> float:
    """
    Max of the separated operator applied to a product candidate, relative to max |Psi|.

    The candidate is psi_scale(a) times each mode factor on its own grid.
    Second derivatives are central differences, so the residual is taken on
    interior points of every grid.

    Raises:
        ResolutionError: If a grid has fewer than 16 points per oscillation
    """
    a_grid = np.asarray(a_grid, dtype=float)
    psi_scale = np.asarray(psi_scale, dtype=float)
    if psi_scale.shape != a_grid.shape:
        raise InputError('psi_scale must be sampled on a_grid', samples=psi_scale.shape, grid=a_grid.shape)
    if len(d_grids) != len(modes):
        raise InputError(f"Expected {len(modes)} mode grids, got {len(d_grids)}")

    step = _uniform_step(a_grid, 'a_grid')
    _check_resolution(step, scale.eigenvalue, 'a_grid')
    a_inner = a_grid[1:-1]
    A = psi_scale[1:-1]
    scale_residual = _second_difference(psi_scale, step) - a_inner ** 2 * A - scale.eigenvalue * A

    factors: List[np.ndarray] = []
    residuals: List[np.ndarray] = []
    for index, (mode, grid) in enumerate(zip(modes, d_grids)):
        grid = np.asarray(grid, dtype=float)
        d_step = _uniform_step(grid, f'd_grids[{index}]')
        _check_resolution(d_step, mode.eigenvalue, f'd_grids[{index}]')
        D = np.asarray(mode.factor(grid, literal_argument), dtype=float)
        inner = D[1:-1]
        residuals.append(_second_difference(D, d_step) - mode.n ** 2 * grid[1:-1] ** 2 * inner
                         + mode.eigenvalue * inner)
        factors.append(inner)

    # Mode-space tensors: product of factors, and sum over n of residual_n times the other factors
    product = np.ones(())
    mode_term = np.zeros(())
    for factor, residual in zip(factors, residuals):
        mode_term = np.multiply.outer(mode_term, factor) + np.multiply.outer(product, residual)
        product = np.multiply.outer(product, factor)

    worst = 0.0
    for start in range(0, A.size, RESIDUAL_CHUNK):
        rows = slice(start, start + RESIDUAL_CHUNK)
        block = np.multiply.outer(scale_residual[rows], product) - np.multiply.outer(A[rows], mode_term)
        worst = max(worst, float(np.max(np.abs(block))))

    scale_peak = float(np.max(np.abs(A)))
    peak = scale_peak * float(np.prod([np.max(np.abs(factor)) for factor in factors]))
    if peak == 0.0:
        raise InputError('Candidate wavefunction vanishes on the grid')
    relative = worst / peak
    logger.debug(f"Decomposition residual {relative:.3e} over {A.size} scale points and {len(modes)} modes")
    return relative
