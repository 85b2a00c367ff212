"""
Lifted Lagrangian Phase
Eigenvalues of ω⁻¹ψ, the lifted angle Θ̂ and the phase windows
"""
import logging
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from math import prod
from typing import Optional, Tuple

import numpy as np

from config.settings import settings
from src.common.errors import BoundaryAmbiguous, PhaseOutOfRange
from src.flag.parabolic_geometry import InvariantClass, ParabolicGeometry, eigenvalues

logger = logging.getLogger(__name__)


class Window(str, Enum):
    HYPERCRITICAL = "hypercritical"
    SUPERCRITICAL = "supercritical"
    SUBCRITICAL = "subcritical"

    @property
    def is_supercritical(self) -> bool:
        return self is not Window.SUBCRITICAL


@dataclass(frozen=True)
class WindowVerdict:
    window: Window
    boundary_distance: float


@dataclass(frozen=True)
class PhaseReport:
    """Exact eigenvalues with the float lift Θ̂ and its window"""

    eigenvalues: Tuple[Fraction, ...]
    modulus_sq: Fraction
    theta_hat: float
    n: int
    boundary_distance: float
    # None when Θ̂ sits within the boundary guard of a threshold
    window: Optional[Window]

    @property
    def calibration_modulus(self) -> float:
        return float(np.sqrt(float(self.modulus_sq)))

    @property
    def ambiguous(self) -> bool:
        return self.window is None


def window_thresholds(n: int) -> Tuple[float, float]:
    """(supercritical, hypercritical) thresholds (n-2)π/2 and (n-1)π/2"""
    return (n - 2) * np.pi / 2, (n - 1) * np.pi / 2


def arctan_sum(values) -> float:
    if len(values) == 0:
        return 0.0
    return float(np.sum(np.arctan(np.array([float(v) for v in values], dtype=float))))


def classify_window(theta_hat: float, n: int, epsilon: Optional[float] = None) -> WindowVerdict:
    """Place Θ̂ in a window; refuses within epsilon of either threshold"""
    epsilon = settings.BOUNDARY_EPSILON if epsilon is None else epsilon
    if n < 1:
        raise PhaseOutOfRange(f"dimension must be positive, got {n}")
    if abs(theta_hat) >= n * np.pi / 2:
        raise PhaseOutOfRange(f"|Θ̂| = {abs(theta_hat)!r} is not below nπ/2 for n = {n}")

    lower, upper = window_thresholds(n)
    distance, nearest = min((abs(theta_hat - lower), lower), (abs(theta_hat - upper), upper))
    if distance < epsilon:
        raise BoundaryAmbiguous(theta_hat, nearest, distance)

    if theta_hat > upper:
        window = Window.HYPERCRITICAL
    elif theta_hat > lower:
        window = Window.SUPERCRITICAL
    else:
        window = Window.SUBCRITICAL
    return WindowVerdict(window=window, boundary_distance=float(distance))


def _saturated_window(theta_hat: float, n: int) -> Window:
    if theta_hat > 0:
        return Window.HYPERCRITICAL
    # just above -nπ/2, which is the open lower threshold only when n = 1
    return Window.SUPERCRITICAL if n == 1 else Window.SUBCRITICAL


def lifted_angle(flag: ParabolicGeometry, omega: InvariantClass, psi: InvariantClass) -> PhaseReport:
    """Θ̂ = Σ_β arctan q_β, the unique lift of Arg ∫(ω + iψ)ⁿ"""
    q = eigenvalues(flag, omega, psi)
    theta_hat = arctan_sum(q)
    modulus_sq = prod((1 + x * x for x in q), start=Fraction(1))
    lower, upper = window_thresholds(flag.dimension)
    distance = float(min(abs(theta_hat - lower), abs(theta_hat - upper)))

    window: Optional[Window]
    if abs(theta_hat) >= flag.dimension * np.pi / 2:
        # arctan saturated in float; the exact lift is strictly inside (-nπ/2, nπ/2)
        window = _saturated_window(theta_hat, flag.dimension)
        logger.debug(f"Θ̂ saturated at {theta_hat!r} on {flag.label}")
    else:
        try:
            window = classify_window(theta_hat, flag.dimension).window
        except BoundaryAmbiguous as e:
            logger.warning(f"Phase window undecided on {flag.label}: {e}")
            window = None

    return PhaseReport(
        eigenvalues=q,
        modulus_sq=modulus_sq,
        theta_hat=theta_hat,
        n=flag.dimension,
        boundary_distance=distance,
        window=window,
    )
