"""
Root System Construction
Positive roots of a simple Lie algebra by root-string closure, with coroot pairings
"""
import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Iterable, List, Sequence, Tuple

from src.common.errors import DimensionMismatch, FlagVarietyError
from src.common.exact import RationalLike, as_fractions, format_fraction
from src.rootsys.cartan_types import CartanDatum, build_cartan_datum

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class WeightVector:
    """Coordinates in the fundamental-weight basis ϖ_1..ϖ_ℓ"""

    coords: Tuple[Fraction, ...]

    def __post_init__(self):
        object.__setattr__(self, 'coords', as_fractions(self.coords))

    @classmethod
    def of(cls, values: Iterable[RationalLike]) -> 'WeightVector':
        return cls(tuple(values))

    @classmethod
    def zero(cls, rank: int) -> 'WeightVector':
        return cls((Fraction(0),) * rank)

    @classmethod
    def fundamental(cls, rank: int, index: int) -> 'WeightVector':
        return cls(tuple(Fraction(int(k == index)) for k in range(rank)))

    @property
    def rank(self) -> int:
        return len(self.coords)

    def __getitem__(self, index: int) -> Fraction:
        return self.coords[index]

    def __iter__(self):
        return iter(self.coords)

    def _check(self, other: 'WeightVector') -> None:
        if other.rank != self.rank:
            raise DimensionMismatch(f"weights of rank {self.rank} and {other.rank}")

    def __add__(self, other: 'WeightVector') -> 'WeightVector':
        self._check(other)
        return WeightVector(tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other: 'WeightVector') -> 'WeightVector':
        self._check(other)
        return WeightVector(tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __neg__(self) -> 'WeightVector':
        return WeightVector(tuple(-a for a in self.coords))

    def scale(self, factor: RationalLike) -> 'WeightVector':
        factor = as_fractions([factor])[0]
        return WeightVector(tuple(factor * a for a in self.coords))

    def is_integral(self) -> bool:
        return all(a.denominator == 1 for a in self.coords)

    def is_zero(self) -> bool:
        return all(a == 0 for a in self.coords)

    def __str__(self) -> str:
        return '(' + ', '.join(format_fraction(a) for a in self.coords) + ')'


@dataclass(frozen=True)
class Root:
    """A positive root β = Σ c_i α_i"""

    coeffs: Tuple[int, ...]
    height: int
    normsq: Fraction
    # ⟨ϖ_α, β∨⟩ for every α, i.e. β∨ in the simple coroot basis
    coroot: Tuple[Fraction, ...]

    def is_simple(self) -> bool:
        return self.height == 1

    def label(self) -> str:
        """Human label such as "α1+2α2" (1-indexed)"""
        parts = []
        for i, c in enumerate(self.coeffs):
            if c == 1:
                parts.append(f"α{i + 1}")
            elif c > 1:
                parts.append(f"{c}α{i + 1}")
        return '+'.join(parts)


def coroot_pairing(weight: WeightVector, root: Root) -> Fraction:
    """⟨λ, β∨⟩ = Σ_α λ_α ⟨ϖ_α, β∨⟩"""
    if weight.rank != len(root.coroot):
        raise DimensionMismatch(f"weight of rank {weight.rank} against root of rank {len(root.coroot)}")
    return sum((w * c for w, c in zip(weight.coords, root.coroot)), Fraction(0))


class RootSystem:
    """Positive roots of a simple Lie algebra, ordered by (height, decreasing coefficients)"""

    def __init__(self, datum: CartanDatum):
        """Initialize root system from a Cartan datum"""
        self.datum = datum
        self.rank = datum.rank
        coefficient_vectors = self._close_root_strings()
        self.positive_roots: Tuple[Root, ...] = tuple(
            self._make_root(c)
            for c in sorted(coefficient_vectors, key=lambda c: (sum(c), tuple(-x for x in c)))
        )
        self._by_coeffs: Dict[Tuple[int, ...], Root] = {r.coeffs: r for r in self.positive_roots}
        logger.info(f"Root system {self.label}: {len(self.positive_roots)} positive roots")

    @property
    def label(self) -> str:
        return self.datum.label

    @property
    def simple_roots(self) -> Tuple[Root, ...]:
        return self.positive_roots[:self.rank]

    @property
    def highest_root(self) -> Root:
        return self.positive_roots[-1]

    @property
    def rho_plus(self) -> WeightVector:
        """Sum of fundamental weights (half the sum of positive roots)"""
        return WeightVector((Fraction(1),) * self.rank)

    def _pairing_with_simple_coroot(self, coeffs: Sequence[int], i: int) -> int:
        # ⟨β, α_i∨⟩ = Σ_j c_j C_ji
        return sum(c * self.datum.matrix[j][i] for j, c in enumerate(coeffs))

    def _close_root_strings(self) -> List[Tuple[int, ...]]:
        """Grow positive roots height by height: β + α_i is a root iff p - ⟨β, α_i∨⟩ > 0"""
        rank = self.rank
        simple = [tuple(int(i == j) for j in range(rank)) for i in range(rank)]
        known = set(simple)
        layer = list(simple)
        while layer:
            next_layer = []
            for beta in layer:
                for i in range(rank):
                    p = 0
                    lowered = list(beta)
                    while True:
                        lowered[i] -= 1
                        if tuple(lowered) not in known:
                            break
                        p += 1
                    if p - self._pairing_with_simple_coroot(beta, i) > 0:
                        raised = list(beta)
                        raised[i] += 1
                        raised = tuple(raised)
                        if raised not in known:
                            known.add(raised)
                            next_layer.append(raised)
            layer = next_layer
        return list(known)

    def _make_root(self, coeffs: Tuple[int, ...]) -> Root:
        d = self.datum.symmetrizer
        normsq = Fraction(sum(
            coeffs[i] * coeffs[j] * self.datum.inner_product(i, j)
            for i in range(self.rank) for j in range(self.rank)
        ))
        coroot = tuple(Fraction(2 * coeffs[a] * d[a]) / normsq for a in range(self.rank))
        return Root(coeffs=coeffs, height=sum(coeffs), normsq=normsq, coroot=coroot)

    def find_root(self, coeffs: Iterable[int]) -> Root:
        key = tuple(int(c) for c in coeffs)
        if len(key) != self.rank:
            raise DimensionMismatch(f"root of {self.label} needs {self.rank} coefficients")
        try:
            return self._by_coeffs[key]
        except KeyError:
            raise FlagVarietyError(f"{key} is not a positive root of {self.label}") from None

    def root_to_weight_coords(self, root: Root) -> WeightVector:
        """β in the fundamental-weight basis: m_j = Σ_i c_i C_ij"""
        return WeightVector(tuple(
            Fraction(self._pairing_with_simple_coroot(root.coeffs, j)) for j in range(self.rank)
        ))

    def coroot_pairing(self, weight: WeightVector, root: Root) -> Fraction:
        if weight.rank != self.rank:
            raise DimensionMismatch(f"{self.label} weights need {self.rank} coordinates")
        return coroot_pairing(weight, root)


@lru_cache(maxsize=None)
def build_root_system(series: str, rank: int) -> RootSystem:
    """Root system of the simple type series_rank (cached, immutable)"""
    return RootSystem(build_cartan_datum(series, rank))


def root_to_weight_coords(root_system: RootSystem, root: Root) -> WeightVector:
    return root_system.root_to_weight_coords(root)
