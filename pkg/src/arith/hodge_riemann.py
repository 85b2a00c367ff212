"""
Hodge-Riemann Form
Q(Ω_α, Ω_γ) = ∫ Ω_α ∧ Ω_γ ∧ ω^{n-2} on the generators of H²(X_P, ℤ)
"""
import logging
from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Sequence, Tuple

import sympy

from src.common.errors import DimensionMismatch, DimensionTooSmall
from src.common.exact import RationalLike, as_fractions
from src.flag.parabolic_geometry import InvariantClass, ParabolicGeometry, volume

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class HodgeRiemannMatrix:
    """Symmetric ρ×ρ matrix over the generators Ω_α, α ∉ I"""

    indices: Tuple[int, ...]
    entries: Tuple[Tuple[Fraction, ...], ...]

    @property
    def integral(self) -> bool:
        return all(x.denominator == 1 for row in self.entries for x in row)

    @property
    def size(self) -> int:
        return len(self.indices)

    def pairing(self, x: Sequence[RationalLike], y: Sequence[RationalLike]) -> Fraction:
        """Q(x, y) for coordinate vectors over Δ∖I"""
        x, y = as_fractions(x), as_fractions(y)
        if len(x) != self.size or len(y) != self.size:
            raise DimensionMismatch(f"Hodge-Riemann pairing needs {self.size} coordinates")
        return sum(
            (x[i] * self.entries[i][j] * y[j] for i in range(self.size) for j in range(self.size)),
            Fraction(0),
        )

    def as_sympy(self) -> sympy.Matrix:
        return sympy.Matrix([[sympy.Rational(x.numerator, x.denominator) for x in row] for row in self.entries])


def generator_contractions(flag: ParabolicGeometry, omega: InvariantClass) -> Tuple[Fraction, ...]:
    """Λ_ω(Ω_α) = Σ_β ⟨ϖ_α, β∨⟩ / ⟨λω, β∨⟩ for α ∉ I"""
    flag.check_kahler(omega)
    omega_pairings = flag.pairings(omega.weight)
    return tuple(
        sum((beta.coroot[a] / w for beta, w in zip(flag.phi, omega_pairings)), Fraction(0))
        for a in flag.picard_indices
    )


def hodge_riemann_matrix(flag: ParabolicGeometry, omega: InvariantClass) -> HodgeRiemannMatrix:
    """(n-2)! (Λ(Ω_α)Λ(Ω_γ) - ⟨Ω_α, Ω_γ⟩_ω) Vol"""
    if flag.dimension < 2:
        raise DimensionTooSmall(f"{flag.label} has dimension {flag.dimension} < 2")
    contractions = generator_contractions(flag, omega)
    omega_pairings = flag.pairings(omega.weight)
    vol = volume(flag, omega)
    scale = factorial(flag.dimension - 2) * vol

    rows = []
    for i, a in enumerate(flag.picard_indices):
        row = []
        for j, g in enumerate(flag.picard_indices):
            inner = sum(
                (beta.coroot[a] * beta.coroot[g] / (w * w) for beta, w in zip(flag.phi, omega_pairings)),
                Fraction(0),
            )
            row.append(scale * (contractions[i] * contractions[j] - inner))
        rows.append(tuple(row))
    matrix = HodgeRiemannMatrix(indices=flag.picard_indices, entries=tuple(rows))
    logger.debug(f"Hodge-Riemann matrix on {flag.label} at ω = {omega}: {matrix.entries}")
    return matrix


def polarization_degrees(flag: ParabolicGeometry, omega: InvariantClass) -> Tuple[Fraction, ...]:
    """Q(Ω_α, ω) for α ∉ I, i.e. deg_ω 𝒪_α(1)"""
    matrix = hodge_riemann_matrix(flag, omega)
    return tuple(matrix.pairing(row_selector(matrix.size, i), flag.coordinates(omega)) for i in range(matrix.size))


def row_selector(size: int, index: int) -> Tuple[int, ...]:
    return tuple(int(k == index) for k in range(size))


def is_primitive(flag: ParabolicGeometry, omega: InvariantClass, psi: InvariantClass) -> bool:
    """ψ ∈ H²_prim, i.e. Q(ψ, ω) = 0"""
    flag.check_invariant(psi)
    matrix = hodge_riemann_matrix(flag, omega)
    return matrix.pairing(flag.coordinates(psi), flag.coordinates(omega)) == 0
