"""
Slope Stability
Slopes, μ̂, restriction to generator curves, split-subbundle stability verdicts,
Arg-dominance and Hermitian-Yang-Mills constants of split homogeneous bundles
"""
import logging
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from itertools import combinations
from math import factorial
from typing import Dict, List, Optional, Tuple

from config.settings import settings
from src.common.errors import InvalidRank, RankTooLarge
from src.dhym.central_charge import ChargeSource, Curve, central_charge
from src.flag.parabolic_geometry import (
    InvariantClass,
    ParabolicGeometry,
    SplitBundle,
    contraction,
    degree,
    summand_contractions,
    volume,
)
from src.rootsys.root_system import coroot_pairing

logger = logging.getLogger(__name__)


class Verdict(str, Enum):
    STABLE = "stable"
    POLYSTABLE = "polystable"
    SEMISTABLE = "semistable"
    UNSTABLE = "unstable"


@dataclass(frozen=True)
class StabilityVerdict:
    """Strongest verdict relative to split subbundles"""

    verdict: Verdict
    slope: Fraction
    witness: Optional[Tuple[int, ...]] = None
    witness_slope: Optional[Fraction] = None

    @property
    def semistable(self) -> bool:
        return self.verdict is not Verdict.UNSTABLE


@dataclass(frozen=True)
class RestrictionReport:
    """Splitting type of E restricted to each generator P¹_α, α ∉ I"""

    semistable: bool
    degrees: Dict[int, Tuple[int, ...]] = field(default_factory=dict)


@dataclass(frozen=True)
class HYMConstant:
    """Einstein constant 2πΛ as a rational multiple of π; summand_values holds 2Λ(λ_j) per summand"""

    defined: bool
    pi_multiple: Optional[Fraction]
    summand_values: Tuple[Fraction, ...]

    @property
    def distinct_values(self) -> Tuple[Fraction, ...]:
        return tuple(sorted(set(self.summand_values)))

    @property
    def lambda_value(self) -> Optional[Fraction]:
        """Λ_ω itself, half the π-multiple"""
        return None if self.pi_multiple is None else self.pi_multiple / 2


def _require_rank(bundle: SplitBundle) -> None:
    if bundle.rank < 1:
        raise InvalidRank("bundles need rank at least 1")


def slope(flag: ParabolicGeometry, omega: InvariantClass, bundle: SplitBundle) -> Fraction:
    """μ_ω(E) = deg_ω(E) / rank(E)"""
    _require_rank(bundle)
    return degree(flag, omega, bundle) / bundle.rank


def mu_hat(flag: ParabolicGeometry, omega: InvariantClass, bundle: SplitBundle) -> Fraction:
    """μ̂(E) = Σ_β ⟨λ(E), β∨⟩ / (r ⟨λω, β∨⟩)"""
    _require_rank(bundle)
    return contraction(flag, omega, bundle) / bundle.rank


def mu_hat_from_charges(flag: ParabolicGeometry, omega: InvariantClass, bundle: SplitBundle) -> Fraction:
    """-Σ_β Re Z(E, P¹_β) / Im Z(E, P¹_β)"""
    total = Fraction(0)
    source = ChargeSource.from_bundle(bundle)
    for beta in flag.phi:
        z = central_charge(flag, omega, source, Curve(beta)).value
        total -= z.re / z.im
    return total


def slope_identity_holds(flag: ParabolicGeometry, omega: InvariantClass, bundle: SplitBundle) -> bool:
    """μ = (n-1)! μ̂ Vol"""
    return slope(flag, omega, bundle) == factorial(flag.dimension - 1) * mu_hat(flag, omega, bundle) * volume(flag, omega)


def restriction_semistable(flag: ParabolicGeometry, bundle: SplitBundle) -> RestrictionReport:
    """E|P¹_α ≅ ⊕ 𝒪(⟨λ_j, α∨⟩) must be balanced on every generator"""
    _require_rank(bundle)
    degrees: Dict[int, Tuple[int, ...]] = {}
    for a in flag.picard_indices:
        simple = flag.root_system.simple_roots[a]
        degrees[a] = tuple(int(coroot_pairing(s.weight, simple)) for s in bundle.summands)
    semistable = all(len(set(d)) == 1 for d in degrees.values())
    return RestrictionReport(semistable=semistable, degrees=degrees)


def split_stability(flag: ParabolicGeometry, omega: InvariantClass, bundle: SplitBundle) -> StabilityVerdict:
    """Compare μ(E) with every nonempty proper sub-multiset of summands"""
    _require_rank(bundle)
    if bundle.rank > settings.MAX_SPLIT_RANK:
        raise RankTooLarge(f"rank {bundle.rank} exceeds the cap {settings.MAX_SPLIT_RANK}")

    summand_degrees = [degree(flag, omega, s) for s in bundle.summands]
    total = sum(summand_degrees, Fraction(0)) / bundle.rank
    if bundle.rank == 1:
        return StabilityVerdict(Verdict.STABLE, total)

    best: Optional[Tuple[int, ...]] = None
    best_slope: Optional[Fraction] = None
    seen = set()
    for size in range(1, bundle.rank):
        for indices in combinations(range(bundle.rank), size):
            key = tuple(sorted(bundle.summands[i].weight.coords for i in indices))
            if key in seen:
                continue
            seen.add(key)
            sub_slope = sum((summand_degrees[i] for i in indices), Fraction(0)) / size
            if best_slope is None or sub_slope > best_slope:
                best, best_slope = indices, sub_slope
    logger.debug(f"Checked {len(seen)} sub-multisets of a rank {bundle.rank} bundle")

    if best_slope > total:
        return StabilityVerdict(Verdict.UNSTABLE, total, best, best_slope)
    if len(set(summand_degrees)) == 1:
        return StabilityVerdict(Verdict.POLYSTABLE, total)
    return StabilityVerdict(Verdict.SEMISTABLE, total, best, best_slope)


def arg_dominance(flag: ParabolicGeometry, omega: InvariantClass, first: SplitBundle, second: SplitBundle) -> bool:
    """Arg Z(E, P¹_β) > Arg Z(F, P¹_β) for every β, compared through ⟨λ, β∨⟩ / r"""
    _require_rank(first)
    _require_rank(second)
    flag.check_kahler(omega)
    return all(
        coroot_pairing(first.determinant, beta) / first.rank
        > coroot_pairing(second.determinant, beta) / second.rank
        for beta in flag.phi
    )


def hym_constant(flag: ParabolicGeometry, omega: InvariantClass, bundle: SplitBundle) -> HYMConstant:
    """2Λ_ω(λ_j) per summand; defined when they agree"""
    _require_rank(bundle)
    values = tuple(2 * c for c in summand_contractions(flag, omega, bundle))
    if len(set(values)) == 1:
        return HYMConstant(defined=True, pi_multiple=values[0], summand_values=values)
    return HYMConstant(defined=False, pi_multiple=None, summand_values=values)


def additive_slope(flag: ParabolicGeometry, omega: InvariantClass, parts: List[SplitBundle]) -> Fraction:
    """(Σ r_i μ_i) / Σ r_i"""
    ranks = sum(p.rank for p in parts)
    return sum((p.rank * slope(flag, omega, p) for p in parts), Fraction(0)) / ranks
