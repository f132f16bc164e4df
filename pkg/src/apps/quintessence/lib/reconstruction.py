"""
Reconstruction of the quintessence potential and field from a sampled
Hubble history.
"""

import logging
import math

from dataclasses import dataclass

import numpy as np
from scipy import integrate

from apps.core.exceptions import DomainError
from apps.core.lib.units import Constants

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Reconstruction:
    times: np.ndarray
    potential: np.ndarray
    phi: np.ndarray
    phi_dot: np.ndarray
    hdot: np.ndarray
    accelerating_mask: np.ndarray


def padmanabhan_reconstruct(times, H_series, constants: Constants) -> Reconstruction:
    """
    V(t) = (3 H^2 / 8 pi G)(1 + Hdot / 3 H^2) and phi(t) = integral of sqrt(-Hdot / 4 pi G).

    Hdot comes from second-order central differences. Samples with Hdot > 0
    have no real field velocity: they contribute zero to the integral and
    are flagged in accelerating_mask.

    Args:
        times: Uniformly spaced sample times
        H_series: Hubble rate at each sample (all positive)
        constants: Constant set (G is the only one used)
    """
    times = np.asarray(times, dtype=float)
    H = np.asarray(H_series, dtype=float)
    if times.shape != H.shape or times.ndim != 1 or times.size < 3:
        raise DomainError('H_series', H.shape, 'one sample per time, at least three samples')
    steps = np.diff(times)
    if not np.all(steps > 0) or not np.allclose(steps, steps[0], rtol=1.0e-9, atol=0.0):
        raise DomainError('times', 'non-uniform grid', 'a uniform increasing grid')
    if not np.all(H > 0):
        raise DomainError('H_series', 'non-positive sample', 'H > 0')

    G = constants.G
    hdot = np.gradient(H, times, edge_order=2)
    potential = 3.0 * H ** 2 / (8.0 * math.pi * G) * (1.0 + hdot / (3.0 * H ** 2))

    accelerating = hdot > 0
    phi_dot = np.sqrt(np.where(accelerating, 0.0, -hdot) / (4.0 * math.pi * G))
    phi = integrate.cumulative_trapezoid(phi_dot, times, initial=0.0)

    if accelerating.any():
        logger.info(f"Reconstruction masked {int(accelerating.sum())} samples with Hdot > 0")
    return Reconstruction(
        times=times,
        potential=potential,
        phi=phi,
        phi_dot=phi_dot,
        hdot=hdot,
        accelerating_mask=accelerating,
    )
