"""
Degree-9 scale-factor polynomial near the big bang.

Coefficients are fixed by the model; roots come from companion
matrix eigenvalues, real candidates are polished with Newton steps and kept
only if they pass a relative residual gate.
"""

import logging
import math

from dataclasses import dataclass
from typing import List

import numpy as np

from apps.core.exceptions import DomainError, SingularityError
from apps.scale.lib.dynamics import DensityParams

logger = logging.getLogger(__name__)

RESIDUAL_GATE = 1.0e-10
IMAG_TOL = 1.0e-8
POLISH_STEPS = 8


@dataclass(frozen=True)
class PolynomialRoots:
    coefficients: np.ndarray
    all_roots: np.ndarray
    real_roots: np.ndarray
    positive_roots: np.ndarray


def polynomial_coefficients(p: DensityParams, t: float) -> np.ndarray:
    """Descending-power coefficients u^9 ... u^0."""
    if p.rho_rel0 == 0:
        raise SingularityError('Polynomial coefficients are singular at rho_rel0 = 0', parameter='rho_rel0')
    if not p.lam > 0:
        raise DomainError('lambda', p.lam, 'lambda > 0')

    rel, mat, a0 = p.rho_rel0, p.rho_m0, p.a0
    load = p.lam / (8.0 * math.pi)
    a1 = 9.0 / 4.0 * mat / rel
    a2 = mat ** 2 / rel ** 2
    a3 = (1.0 / 5.0) / rel
    a4 = mat * (1.0 / 4.0) / rel ** 2
    a5 = 1.0 / rel ** 2
    a6 = 1.0 / rel ** 2 * math.sqrt(p.lam / 3.0)

    return np.array([
        1.0,
        a1 / a0,
        a2 / a0 ** 2,
        0.0,
        -a3 * load / a0 ** 4,
        -a4 * load / a0 ** 5,
        0.0,
        0.0,
        a5 * load ** 2 / a0 ** 8,
        a6 * load ** 2 * t / a0 ** 9,
    ])


def relative_residual(coefficients: np.ndarray, u: float) -> float:
    """|p(u)| divided by the Euclidean norm of the coefficient vector."""
    value = abs(np.polyval(coefficients, u))
    scale = np.linalg.norm(coefficients)
    if scale == 0:
        return 0.0 if value == 0 else math.inf
    return float(value / scale)


def _polish(coefficients: np.ndarray, u: float) -> float:
    derivative = np.polyder(coefficients)
    for _ in range(POLISH_STEPS):
        slope = np.polyval(derivative, u)
        if slope == 0:
            break
        step = np.polyval(coefficients, u) / slope
        candidate = u - step
        if relative_residual(coefficients, candidate) > relative_residual(coefficients, u):
            break
        u = candidate
        if abs(step) <= 1.0e-14 * max(1.0, abs(u)):
            break
    return float(u)


def real_roots(coefficients: np.ndarray) -> np.ndarray:
    """Polished real roots of a real polynomial that pass the residual gate, sorted ascending."""
    roots = np.roots(coefficients)
    accepted: List[float] = []
    for root in roots:
        if abs(root.imag) > IMAG_TOL * max(1.0, abs(root)):
            continue
        u = _polish(coefficients, float(root.real))
        residual = relative_residual(coefficients, u)
        if residual < RESIDUAL_GATE:
            accepted.append(u)
        else:
            logger.warning(f"Dropped real root candidate {u!r} with residual {residual:.3e}")
    return np.sort(np.array(accepted, dtype=float))


def scale_polynomial(p: DensityParams, t: float) -> PolynomialRoots:
    """
    Build the polynomial at time t and isolate its real roots.

    For non-negative densities the polynomial has no positive root in the
    parameter ranges explored so far; positive_roots is then empty, which is
    a result and not an error.
    """
    coefficients = polynomial_coefficients(p, t)
    all_roots = np.roots(coefficients)
    reals = real_roots(coefficients)
    positives = reals[reals > 0]
    logger.debug(f"Polynomial at t={t}: {reals.size} real roots, {positives.size} positive")
    return PolynomialRoots(
        coefficients=coefficients,
        all_roots=all_roots,
        real_roots=reals,
        positive_roots=positives,
    )
