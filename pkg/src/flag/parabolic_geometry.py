"""
Parabolic Flag Geometry
Φ_I⁺, δ_P, invariant classes, split bundles and the volume/degree formulas of X_P = G/P
"""
import logging
from dataclasses import dataclass
from fractions import Fraction
from math import factorial, prod
from typing import FrozenSet, Iterable, List, Optional, Sequence, Tuple, Union

from src.common.errors import (
    DimensionMismatch,
    DimensionTooSmall,
    IndexOutOfRange,
    InternalConsistencyError,
    NonInvariantClass,
    NotIntegral,
    NotKahler,
    RootNotInParabolicSet,
)
from src.common.exact import RationalLike, as_fractions
from src.rootsys.root_system import Root, RootSystem, WeightVector, coroot_pairing

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class InvariantClass:
    """A G-invariant real (1,1)-class, stored as its weight λ(·)"""

    weight: WeightVector

    @property
    def integral(self) -> bool:
        return self.weight.is_integral()

    def __add__(self, other: 'InvariantClass') -> 'InvariantClass':
        return InvariantClass(self.weight + other.weight)

    def __sub__(self, other: 'InvariantClass') -> 'InvariantClass':
        return InvariantClass(self.weight - other.weight)

    def scale(self, factor: RationalLike) -> 'InvariantClass':
        return InvariantClass(self.weight.scale(factor))

    def __str__(self) -> str:
        return str(self.weight)


@dataclass(frozen=True)
class KahlerClass(InvariantClass):
    """An invariant class with strictly positive coordinates on Δ∖I"""


@dataclass(frozen=True)
class SplitBundle:
    """⊕_j 𝒪(λ_j) for integral invariant classes λ_j"""

    summands: Tuple[InvariantClass, ...]

    def __post_init__(self):
        if not self.summands:
            raise DimensionMismatch("a split bundle needs at least one summand")
        ranks = {s.weight.rank for s in self.summands}
        if len(ranks) != 1:
            raise DimensionMismatch("summands of different ranks")
        for summand in self.summands:
            if not summand.integral:
                raise NotIntegral(f"summand {summand} is not an integral weight")

    @classmethod
    def of(cls, *summands: InvariantClass) -> 'SplitBundle':
        return cls(tuple(summands))

    @property
    def rank(self) -> int:
        return len(self.summands)

    @property
    def determinant(self) -> WeightVector:
        """λ(E) = Σ_j λ_j, the weight of c₁(E)"""
        total = self.summands[0].weight
        for summand in self.summands[1:]:
            total = total + summand.weight
        return total

    def direct_sum(self, other: 'SplitBundle') -> 'SplitBundle':
        return SplitBundle(self.summands + other.summands)

    def twist(self, line: InvariantClass) -> 'SplitBundle':
        """E ⊗ 𝒪(λ)"""
        return SplitBundle(tuple(s + line for s in self.summands))

    def sub_bundle(self, indices: Iterable[int]) -> 'SplitBundle':
        return SplitBundle(tuple(self.summands[i] for i in indices))

    def __str__(self) -> str:
        return ' ⊕ '.join(f"𝒪{s}" for s in self.summands)


ClassLike = Union[InvariantClass, SplitBundle]


class ParabolicGeometry:
    """Combinatorial model of the flag variety X_P determined by I ⊂ Δ"""

    def __init__(self, root_system: RootSystem, parabolic: FrozenSet[int]):
        """Initialize flag geometry for a parabolic index set"""
        self.root_system = root_system
        self.parabolic = frozenset(parabolic)
        self.picard_indices: Tuple[int, ...] = tuple(
            a for a in range(root_system.rank) if a not in self.parabolic
        )
        self.phi: Tuple[Root, ...] = tuple(
            beta for beta in root_system.positive_roots
            if any(beta.coeffs[a] > 0 for a in self.picard_indices)
        )
        self.dimension = len(self.phi)
        delta = WeightVector.zero(root_system.rank)
        for beta in self.phi:
            delta = delta + root_system.root_to_weight_coords(beta)
        self.delta_p = delta
        self.rho_plus = root_system.rho_plus

        for a in self.picard_indices:
            if self.delta_p[a] <= 0:
                raise InternalConsistencyError(f"δ_P fails to be positive on α{a + 1}")
        logger.info(
            f"Flag {self.label}: dim {self.dimension}, Picard number {self.picard_number}"
        )

    @property
    def rank(self) -> int:
        return self.root_system.rank

    @property
    def picard_number(self) -> int:
        return len(self.picard_indices)

    @property
    def label(self) -> str:
        crossed = ','.join(str(a + 1) for a in sorted(self.parabolic))
        return f"{self.root_system.label}/P[{crossed}]"

    def _full_weight(self, values: Sequence[RationalLike]) -> WeightVector:
        values = as_fractions(values)
        if len(values) == self.picard_number:
            coords = [Fraction(0)] * self.rank
            for a, v in zip(self.picard_indices, values):
                coords[a] = v
            return WeightVector(tuple(coords))
        if len(values) == self.rank:
            weight = WeightVector(values)
            for a in self.parabolic:
                if weight[a] != 0:
                    raise NonInvariantClass(f"coordinate α{a + 1} ∈ I must vanish")
            return weight
        raise DimensionMismatch(
            f"{self.label} classes take {self.picard_number} (over Δ∖I) or {self.rank} coordinates"
        )

    def invariant_class(self, values: Union[Sequence[RationalLike], WeightVector]) -> InvariantClass:
        if isinstance(values, WeightVector):
            values = values.coords
        return InvariantClass(self._full_weight(values))

    def kahler_class(self, values: Union[Sequence[RationalLike], WeightVector]) -> KahlerClass:
        if isinstance(values, WeightVector):
            values = values.coords
        omega = KahlerClass(self._full_weight(values))
        self.check_kahler(omega)
        return omega

    def line_bundle(self, values: Sequence[RationalLike]) -> SplitBundle:
        return SplitBundle.of(self.invariant_class(values))

    def split_bundle(self, summands: Iterable[Sequence[RationalLike]]) -> SplitBundle:
        return SplitBundle(tuple(self.invariant_class(s) for s in summands))

    def check_kahler(self, omega: InvariantClass) -> None:
        self.check_invariant(omega)
        bad = [a + 1 for a in self.picard_indices if omega.weight[a] <= 0]
        if bad:
            raise NotKahler(f"class {omega} is not positive on α{bad}")

    def check_invariant(self, cls: InvariantClass) -> None:
        if cls.weight.rank != self.rank:
            raise DimensionMismatch(f"{self.label} classes have {self.rank} coordinates")
        for a in self.parabolic:
            if cls.weight[a] != 0:
                raise NonInvariantClass(f"coordinate α{a + 1} ∈ I must vanish")

    def check_in_phi(self, root: Root) -> None:
        if root not in self.phi:
            raise RootNotInParabolicSet(f"{root.label()} is not in Φ_I⁺ of {self.label}")

    def coordinates(self, cls: InvariantClass) -> Tuple[Fraction, ...]:
        """Coordinates over Δ∖I"""
        return tuple(cls.weight[a] for a in self.picard_indices)

    def pairings(self, weight: WeightVector) -> Tuple[Fraction, ...]:
        """⟨λ, β∨⟩ for β ∈ Φ_I⁺ in root order"""
        return tuple(coroot_pairing(weight, beta) for beta in self.phi)


def build_flag(root_system: RootSystem, parabolic: Iterable[int]) -> ParabolicGeometry:
    parabolic = frozenset(int(a) for a in parabolic)
    for a in parabolic:
        if not 0 <= a < root_system.rank:
            raise IndexOutOfRange(f"simple root index {a} outside 0..{root_system.rank - 1}")
    if len(parabolic) == root_system.rank:
        raise DimensionTooSmall("I = Δ gives a point, not a flag variety")
    return ParabolicGeometry(root_system, parabolic)


def _weight_of(cls: ClassLike) -> WeightVector:
    return cls.determinant if isinstance(cls, SplitBundle) else cls.weight


def volume(flag: ParabolicGeometry, omega: InvariantClass) -> Fraction:
    """Vol(X_P, ω) = Π_β ⟨λω, β∨⟩ / ⟨ϱ⁺, β∨⟩"""
    flag.check_kahler(omega)
    return prod(
        (Fraction(w) / Fraction(r) for w, r in zip(flag.pairings(omega.weight), flag.pairings(flag.rho_plus))),
        start=Fraction(1),
    )


def contraction(flag: ParabolicGeometry, omega: InvariantClass, cls: ClassLike) -> Fraction:
    """Λ_ω(ψ) = Σ_β ⟨λ(ψ), β∨⟩ / ⟨λω, β∨⟩"""
    flag.check_kahler(omega)
    weight = _weight_of(cls)
    if weight.rank != flag.rank:
        raise DimensionMismatch(f"{flag.label} classes have {flag.rank} coordinates")
    return sum(
        (Fraction(p) / w for p, w in zip(flag.pairings(weight), flag.pairings(omega.weight))),
        Fraction(0),
    )


def degree(flag: ParabolicGeometry, omega: InvariantClass, cls: ClassLike) -> Fraction:
    """deg_ω = (n-1)! · Λ_ω(c₁) · Vol(X_P, ω)"""
    return factorial(flag.dimension - 1) * contraction(flag, omega, cls) * volume(flag, omega)


def eigenvalues(flag: ParabolicGeometry, omega: InvariantClass, psi: InvariantClass) -> Tuple[Fraction, ...]:
    """q_β = ⟨ψ, β∨⟩ / ⟨ω, β∨⟩ in root order"""
    flag.check_kahler(omega)
    flag.check_invariant(psi)
    return tuple(
        Fraction(p) / w for p, w in zip(flag.pairings(psi.weight), flag.pairings(omega.weight))
    )


def curve_class_decomposition(flag: ParabolicGeometry, root: Root) -> WeightVector:
    """[P¹_β] = Σ_{α ∉ I} ⟨ϖ_α, β∨⟩ [P¹_α], zero on I"""
    flag.check_in_phi(root)
    coords = [Fraction(0)] * flag.rank
    for a in flag.picard_indices:
        coords[a] = root.coroot[a]
    decomposition = WeightVector(tuple(coords))
    if not decomposition.is_integral():
        raise NotIntegral(f"coroot of {root.label()} has non-integral coordinates")
    return decomposition


def anticanonical(flag: ParabolicGeometry) -> SplitBundle:
    """K⁻¹ = 𝒪(δ_P)"""
    return flag.line_bundle(flag.coordinates(InvariantClass(flag.delta_p)))


def anticanonical_kahler_class(flag: ParabolicGeometry) -> KahlerClass:
    return flag.kahler_class(flag.coordinates(InvariantClass(flag.delta_p)))


def schubert_divisor(flag: ParabolicGeometry, index: int) -> InvariantClass:
    """Class of D_α, i.e. c₁(𝒪_α(1)) = ϖ_α"""
    if index not in flag.picard_indices:
        raise IndexOutOfRange(f"α{index + 1} is not in Δ∖I for {flag.label}")
    return InvariantClass(WeightVector.fundamental(flag.rank, index))


def summand_contractions(flag: ParabolicGeometry, omega: InvariantClass, bundle: SplitBundle) -> List[Fraction]:
    return [contraction(flag, omega, s) for s in bundle.summands]


def find_phi_root(flag: ParabolicGeometry, coeffs: Iterable[int]) -> Root:
    root = flag.root_system.find_root(coeffs)
    flag.check_in_phi(root)
    return root


def effective(cls: InvariantClass, flag: Optional[ParabolicGeometry] = None) -> bool:
    """Nonnegative and nonzero on Δ∖I"""
    coords = flag.coordinates(cls) if flag is not None else cls.weight.coords
    return all(c >= 0 for c in coords) and any(c > 0 for c in coords)
