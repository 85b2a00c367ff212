"""
Slope Arithmetic
τ([ω]), integral solutions of prescribed slope, the Pic⁰ lattice, natural density,
nef solutions and the K₀ splitting report
"""
import logging
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Dict, List, Optional, Tuple

import sympy
from sympy.core.intfunc import igcdex
from sympy.matrices.normalforms import smith_normal_form
from sympy.polys.domains import ZZ

from config.settings import settings
from src.common.errors import (
    FlagVarietyError,
    GuaranteeViolated,
    IndexOutOfRange,
    InternalConsistencyError,
    InvalidRank,
    NotIntegral,
    Unsolvable,
)
from src.flag.parabolic_geometry import (
    InvariantClass,
    ParabolicGeometry,
    SplitBundle,
    degree,
    schubert_divisor,
)
from src.stability.slope_stability import Verdict, slope, split_stability

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SlopeLattice:
    tau: int
    particular: Optional[InvariantClass]
    pic0_basis: Tuple[InvariantClass, ...]
    gamma: int


@dataclass(frozen=True)
class DensityReport:
    count: int
    limit: Fraction
    bound: Fraction
    upper: int

    @property
    def gap(self) -> Fraction:
        return self.limit - Fraction(self.count, self.upper)


@dataclass(frozen=True)
class NefSearchResult:
    solution: Optional[InvariantClass]
    target: int
    guarantee_bound: int
    guaranteed: bool
    truncated: bool = False

    @property
    def found(self) -> bool:
        return self.solution is not None


@dataclass(frozen=True)
class K0Report:
    tau: int
    pic0_basis: Tuple[InvariantClass, ...]
    pic0_index: int
    gamma: int
    statement: str


def _require_integral(flag: ParabolicGeometry, omega: InvariantClass) -> None:
    flag.check_kahler(omega)
    if not omega.integral:
        raise NotIntegral(f"Kähler class {omega} is not integral")


def generator_degrees(flag: ParabolicGeometry, omega: InvariantClass) -> Tuple[int, ...]:
    """deg_ω 𝒪_α(1) for α ∉ I, as exact integers"""
    _require_integral(flag, omega)
    degrees = []
    for a in flag.picard_indices:
        value = degree(flag, omega, schubert_divisor(flag, a))
        if value.denominator != 1 or value <= 0:
            raise InternalConsistencyError(f"deg 𝒪_{a + 1}(1) = {value} is not a positive integer")
        degrees.append(int(value))
    return tuple(degrees)


def tau(flag: ParabolicGeometry, omega: InvariantClass) -> int:
    """gcd of the generator degrees"""
    return gcd(*generator_degrees(flag, omega))


def tau_factorization(flag: ParabolicGeometry, omega: InvariantClass) -> Dict[int, int]:
    """v_p(τ) = min_α v_p(deg 𝒪_α(1))"""
    degrees = generator_degrees(flag, omega)
    valuations = {}
    for p in sympy.factorint(degrees[0]):
        v = min(sympy.multiplicity(p, d) for d in degrees)
        if v > 0:
            valuations[int(p)] = int(v)
    return valuations


def prime_slope_solvable(flag: ParabolicGeometry, omega: InvariantClass, p: int) -> bool:
    """μ = p is attainable iff τ = p or τ = 1"""
    if not sympy.isprime(p):
        raise FlagVarietyError(f"{p} is not prime")
    return tau(flag, omega) in (1, p)


def _bezout(values: Tuple[int, ...]) -> Tuple[List[int], int]:
    """Coefficients x with Σ x_k v_k = gcd(v), by iterated extended Euclid"""
    g = 0
    coefficients: List[int] = []
    for v in values:
        x, y, g_next = igcdex(g, v)
        coefficients = [int(c * x) for c in coefficients] + [int(y)]
        g = int(g_next)
    return coefficients, g


def _class_from_coordinates(flag: ParabolicGeometry, coordinates) -> InvariantClass:
    return flag.invariant_class([int(c) for c in coordinates])


def solve_slope(flag: ParabolicGeometry, omega: InvariantClass, target: int) -> InvariantClass:
    """A line bundle of slope exactly target, or Unsolvable when τ ∤ target"""
    degrees = generator_degrees(flag, omega)
    coefficients, g = _bezout(degrees)
    if target % g != 0:
        raise Unsolvable(target, g)
    solution = _class_from_coordinates(flag, (c * (target // g) for c in coefficients))

    achieved = slope(flag, omega, SplitBundle.of(solution))
    if achieved != target:
        raise InternalConsistencyError(f"solution {solution} has slope {achieved}, expected {target}")
    logger.debug(f"Slope {target} on {flag.label} realised by {solution}")
    return solution


def _pivot(flag: ParabolicGeometry, gamma: Optional[int]) -> int:
    if gamma is None:
        return flag.picard_indices[0]
    if gamma not in flag.picard_indices:
        raise IndexOutOfRange(f"pivot α{gamma + 1} is not in Δ∖I for {flag.label}")
    return gamma


def pic0_generators(flag: ParabolicGeometry, omega: InvariantClass, gamma: Optional[int] = None) -> Tuple[InvariantClass, ...]:
    """ξ_α = -q_α Ω_γ + q_γ Ω_α with q = deg/τ, for α ∉ I ∪ {γ}"""
    gamma = _pivot(flag, gamma)
    degrees = generator_degrees(flag, omega)
    t = gcd(*degrees)
    q = {a: d // t for a, d in zip(flag.picard_indices, degrees)}

    generators = []
    for a in flag.picard_indices:
        if a == gamma:
            continue
        coords = [0] * flag.rank
        coords[gamma] = -q[a]
        coords[a] = q[gamma]
        xi = flag.invariant_class(coords)
        if degree(flag, omega, xi) != 0:
            raise InternalConsistencyError(f"Pic⁰ generator {xi} has nonzero degree")
        generators.append(xi)
    return tuple(generators)


def pic0_index(flag: ParabolicGeometry, omega: InvariantClass, gamma: Optional[int] = None) -> int:
    """Index of ⟨ξ_α⟩ inside the full slope-zero lattice"""
    generators = pic0_generators(flag, omega, gamma)
    if not generators:
        return 1
    rows = [[int(c) for c in flag.coordinates(xi)] for xi in generators]
    snf = smith_normal_form(sympy.Matrix(rows), domain=ZZ)
    index = 1
    for k in range(min(snf.shape)):
        if snf[k, k] != 0:
            index *= abs(int(snf[k, k]))
    return index


def basis_determinant(flag: ParabolicGeometry, omega: InvariantClass, gamma: Optional[int] = None) -> Fraction:
    """det of {ω, ξ_α} over Δ∖I"""
    rows = [list(flag.coordinates(omega))]
    rows += [list(flag.coordinates(xi)) for xi in pic0_generators(flag, omega, gamma)]
    det = sympy.Matrix([[sympy.Rational(x.numerator, x.denominator) for x in row] for row in rows]).det()
    return Fraction(int(det.p), int(det.q))


def slope_lattice(
    flag: ParabolicGeometry, omega: InvariantClass, target: Optional[int] = None, gamma: Optional[int] = None
) -> SlopeLattice:
    gamma = _pivot(flag, gamma)
    particular = None
    if target is not None:
        particular = solve_slope(flag, omega, target)
    return SlopeLattice(
        tau=tau(flag, omega),
        particular=particular,
        pic0_basis=pic0_generators(flag, omega, gamma),
        gamma=gamma,
    )


def density(flag: ParabolicGeometry, omega: InvariantClass, upper: int) -> DensityReport:
    """Share of 1..upper attainable as slopes, against the limit 1/τ"""
    if upper < 1:
        raise FlagVarietyError(f"density needs a positive bound, got {upper}")
    t = tau(flag, omega)
    report = DensityReport(count=upper // t, limit=Fraction(1, t), bound=Fraction(t, upper), upper=upper)
    if not 0 <= report.gap < report.bound:
        raise InternalConsistencyError(f"density gap {report.gap} escapes the bound {report.bound}")
    return report


def nef_guarantee_bound(flag: ParabolicGeometry, omega: InvariantClass, gamma: Optional[int] = None) -> int:
    """(Q_γ - 1) Σ_{α≠γ} Q_α"""
    gamma = _pivot(flag, gamma)
    degrees = dict(zip(flag.picard_indices, generator_degrees(flag, omega)))
    return (degrees[gamma] - 1) * sum(d for a, d in degrees.items() if a != gamma)


def _nonnegative_search(degrees: Tuple[int, ...], target: int, max_nodes: int) -> Tuple[Optional[List[int]], bool]:
    nodes = 0

    def search(k: int, remaining: int) -> Optional[List[int]]:
        nonlocal nodes
        nodes += 1
        if nodes > max_nodes:
            return None
        d = degrees[k]
        if k == len(degrees) - 1:
            return [remaining // d] if remaining % d == 0 else None
        for x in range(remaining // d, -1, -1):
            rest = search(k + 1, remaining - x * d)
            if rest is not None:
                return [x] + rest
        return None

    found = search(0, target)
    return found, nodes > max_nodes


def nef_solve(flag: ParabolicGeometry, omega: InvariantClass, target: int, gamma: Optional[int] = None) -> NefSearchResult:
    """A dominant line bundle of slope target, searched with coordinates ≤ target / degree"""
    degrees = generator_degrees(flag, omega)
    t = gcd(*degrees)
    bound = nef_guarantee_bound(flag, omega, gamma)
    guaranteed = t == 1 and target >= bound

    solution = None
    truncated = False
    if target >= 0 and target % t == 0:
        coordinates, truncated = _nonnegative_search(degrees, target, settings.NEF_SEARCH_MAX_NODES)
        if coordinates is not None:
            solution = _class_from_coordinates(flag, coordinates)
            if slope(flag, omega, SplitBundle.of(solution)) != target:
                raise InternalConsistencyError(f"nef solution {solution} misses slope {target}")

    if truncated:
        logger.warning(f"Nef search for slope {target} on {flag.label} stopped at the node limit")
    if solution is None and guaranteed and not truncated:
        raise GuaranteeViolated(f"no nonnegative solution for slope {target} ≥ {bound} with τ = 1")
    return NefSearchResult(
        solution=solution, target=target, guarantee_bound=bound, guaranteed=guaranteed, truncated=truncated
    )


def line_bundle_name(flag: ParabolicGeometry, cls: InvariantClass) -> str:
    """Tensor notation such as 𝒪_1(-1)⊗𝒪_2(1)"""
    factors = [
        f"𝒪_{a + 1}({int(cls.weight[a])})" for a in flag.picard_indices if cls.weight[a] != 0
    ]
    return '⊗'.join(factors) if factors else '𝒪'


def k0_report(flag: ParabolicGeometry, omega: InvariantClass, gamma: Optional[int] = None) -> K0Report:
    """K₀ ≅ SK₀ ⊕ Pic⁰ ⊕ τℤ"""
    gamma = _pivot(flag, gamma)
    t = tau(flag, omega)
    basis = pic0_generators(flag, omega, gamma)
    index = pic0_index(flag, omega, gamma)

    parts = ['SK₀']
    if basis:
        parts.append('⟨' + ', '.join(line_bundle_name(flag, xi) for xi in basis) + '⟩')
    parts.append('ℤ' if t == 1 else f"{t}ℤ")
    statement = 'K₀ ≅ ' + ' ⊕ '.join(parts)
    if index != 1:
        statement += f" (generators span a sublattice of index {index} in Pic⁰)"
    return K0Report(tau=t, pic0_basis=basis, pic0_index=index, gamma=gamma, statement=statement)


def polystable_bundle(
    flag: ParabolicGeometry, omega: InvariantClass, target: int, rank: int, gamma: Optional[int] = None
) -> SplitBundle:
    """⊕_j (F₀ ⊗ G_j) with slope(F₀) = target and G_j = j·ξ ∈ Pic⁰"""
    if rank < 1:
        raise InvalidRank(f"rank must be positive, got {rank}")
    base = solve_slope(flag, omega, target)
    basis = pic0_generators(flag, omega, gamma)
    step = basis[0] if basis else InvariantClass(base.weight.scale(0))
    bundle = SplitBundle(tuple(base + step.scale(j) for j in range(rank)))

    verdict = split_stability(flag, omega, bundle)
    expected = Verdict.STABLE if rank == 1 else Verdict.POLYSTABLE
    if verdict.verdict is not expected or verdict.slope != target:
        raise InternalConsistencyError(f"constructed bundle is {verdict.verdict.value} with slope {verdict.slope}")
    return bundle
