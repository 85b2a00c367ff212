"""
Domain Errors
Exception hierarchy shared by every flag-variety module
"""
from typing import Optional


class FlagVarietyError(ValueError):
    """Base class for invalid input or unsatisfiable requests"""


class InvalidCartanType(FlagVarietyError):
    """Unknown series, bad rank, or a matrix that is not a simple Cartan matrix"""


class DimensionMismatch(FlagVarietyError):
    """A vector has the wrong number of coordinates"""


class IndexOutOfRange(FlagVarietyError):
    """A simple-root index outside 0..rank-1 (or inside I where Δ∖I is required)"""


class NonInvariantClass(FlagVarietyError):
    """A weight with nonzero coordinates on the parabolic index set"""


class NotKahler(FlagVarietyError):
    """A class with a nonpositive coordinate on Δ∖I"""


class NotIntegral(FlagVarietyError):
    """A class or bundle that is required to be integral is not"""


class RootNotInParabolicSet(FlagVarietyError):
    """A root outside Φ_I⁺"""


class PhaseOutOfRange(FlagVarietyError):
    """A lifted angle outside the open interval (-nπ/2, nπ/2)"""


class BoundaryAmbiguous(FlagVarietyError):
    """A lifted angle within the boundary guard of a window threshold"""

    def __init__(self, theta_hat: float, threshold: float, distance: float):
        self.theta_hat = theta_hat
        self.threshold = threshold
        self.distance = distance
        super().__init__(
            f"lifted angle {theta_hat!r} lies {distance:.3e} rad from threshold {threshold!r}"
        )


class ZeroTotalCharge(FlagVarietyError):
    """Z(E, X) vanished, so ratios against it are undefined"""


class InvalidRank(FlagVarietyError):
    """A rank outside the range an operation accepts"""


class RankTooLarge(FlagVarietyError):
    """Sub-multiset enumeration refused above the configured rank cap"""


class NotEffective(FlagVarietyError):
    """A divisor class with a negative coordinate (or the zero class)"""


class DimensionTooSmall(FlagVarietyError):
    """An operation needs dim X_P ≥ 2"""


class Unsolvable(FlagVarietyError):
    """A slope equation with no integral solution"""

    def __init__(self, target: int, tau: int, message: Optional[str] = None):
        self.target = target
        self.tau = tau
        super().__init__(message or f"slope {target} is not a multiple of τ = {tau}")


class GuaranteeViolated(FlagVarietyError):
    """A search came back empty above its proven existence bound"""


class InternalConsistencyError(FlagVarietyError):
    """A computed result failed its own postcondition"""
