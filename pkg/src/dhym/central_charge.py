"""
Central Charges
Exact Z(·, Y) for X_P, generator curves P¹_β and divisor classes, with the
CJY ratio sign Im(Z_Y/Z_X) and the subvariety phase defect
"""
import logging
from dataclasses import dataclass
from fractions import Fraction
from math import prod
from typing import Tuple, Union

import numpy as np

from src.common.errors import InvalidRank, NotEffective, ZeroTotalCharge
from src.common.exact import GaussianRational
from src.dhym.phase_angles import arctan_sum, window_thresholds
from src.flag.parabolic_geometry import (
    InvariantClass,
    ParabolicGeometry,
    SplitBundle,
    eigenvalues,
    effective,
    volume,
)
from src.rootsys.root_system import Root, coroot_pairing

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class WholeSpace:
    def dimension(self, flag: ParabolicGeometry) -> int:
        return flag.dimension

    def describe(self) -> str:
        return "X"


@dataclass(frozen=True)
class Curve:
    root: Root

    def dimension(self, flag: ParabolicGeometry) -> int:
        return 1

    def describe(self) -> str:
        return f"P¹[{self.root.label()}]"


@dataclass(frozen=True)
class Divisor:
    cls: InvariantClass

    def dimension(self, flag: ParabolicGeometry) -> int:
        return flag.dimension - 1

    def describe(self) -> str:
        return f"D{self.cls}"


Target = Union[WholeSpace, Curve, Divisor]


@dataclass(frozen=True)
class ChargeSource:
    """A class λ together with the rank it carries (1 for a class ψ, r for a bundle)"""

    cls: InvariantClass
    rank: int = 1
    # summands of a split bundle, empty for a bare class
    summands: Tuple[InvariantClass, ...] = ()

    @classmethod
    def from_bundle(cls, bundle: SplitBundle) -> 'ChargeSource':
        return cls(InvariantClass(bundle.determinant), bundle.rank, tuple(bundle.summands))


@dataclass(frozen=True)
class CentralCharge:
    value: GaussianRational
    target: Target

    @property
    def arg(self) -> float:
        return self.value.arg()


@dataclass(frozen=True)
class CJYRatio:
    """Exact sign of Im(Z_Y / Z_X) and the float ratio for reporting"""

    sign: int
    ratio: complex
    charge_x: GaussianRational
    charge_y: GaussianRational


def _as_source(source: Union[ChargeSource, InvariantClass, SplitBundle]) -> ChargeSource:
    if isinstance(source, ChargeSource):
        return source
    if isinstance(source, SplitBundle):
        return ChargeSource.from_bundle(source)
    return ChargeSource(source, 1)


def _ratios(flag: ParabolicGeometry, omega: InvariantClass, cls: InvariantClass) -> Tuple[Fraction, ...]:
    return eigenvalues(flag, omega, cls)


def central_charge(
    flag: ParabolicGeometry,
    omega: InvariantClass,
    source: Union[ChargeSource, InvariantClass, SplitBundle],
    target: Target,
) -> CentralCharge:
    """Z(λ, Y) as an exact Gaussian rational"""
    source = _as_source(source)
    flag.check_kahler(omega)
    flag.check_invariant(source.cls)
    if source.rank < 0:
        raise InvalidRank(f"rank must be nonnegative, got {source.rank}")

    # Z is additive on direct sums; only curve charges are linear in (λ, r)
    if len(source.summands) > 1 and not isinstance(target, Curve):
        total = GaussianRational(0, 0)
        for summand in source.summands:
            total = total + central_charge(flag, omega, ChargeSource(summand, 1), target).value
        return CentralCharge(value=total, target=target)

    if isinstance(target, WholeSpace):
        q = _ratios(flag, omega, source.cls)
        product = prod((GaussianRational(1, x) for x in q), start=GaussianRational.one())
        value = -(GaussianRational.unit_power(-flag.dimension) * product) * volume(flag, omega)

    elif isinstance(target, Curve):
        flag.check_in_phi(target.root)
        if source.rank < 1:
            raise InvalidRank("curve charges need a source of rank at least 1")
        value = GaussianRational(
            -coroot_pairing(source.cls.weight, target.root),
            source.rank * coroot_pairing(omega.weight, target.root),
        )

    elif isinstance(target, Divisor):
        flag.check_invariant(target.cls)
        a = _ratios(flag, omega, source.cls)
        b = _ratios(flag, omega, target.cls)
        total = GaussianRational(0, 0)
        for k, b_k in enumerate(b):
            if b_k == 0:
                continue
            factors = (GaussianRational(a_j, -1) for j, a_j in enumerate(a) if j != k)
            total = total + prod(factors, start=GaussianRational.one()) * b_k
        value = -total * volume(flag, omega)

    else:
        raise TypeError(f"unknown charge target {target!r}")

    logger.debug(f"Z({source.cls}, {target.describe()}) = {value}")
    return CentralCharge(value=value, target=target)


def bundle_central_charge(
    flag: ParabolicGeometry, omega: InvariantClass, bundle: SplitBundle, target: Target
) -> CentralCharge:
    """Σ_j Z(𝒪(λ_j), Y)"""
    return central_charge(flag, omega, ChargeSource.from_bundle(bundle), target)


def cjy_ratio(
    flag: ParabolicGeometry,
    omega: InvariantClass,
    source: Union[ChargeSource, InvariantClass, SplitBundle],
    target: Target,
) -> CJYRatio:
    source = _as_source(source)
    z_x = central_charge(flag, omega, source, WholeSpace()).value
    if z_x.is_zero():
        raise ZeroTotalCharge(f"Z(X) vanishes for {source.cls} on {flag.label}")
    z_y = central_charge(flag, omega, source, target).value

    im = (z_y * z_x.conjugate()).im
    sign = (im > 0) - (im < 0)
    return CJYRatio(sign=sign, ratio=complex(z_y) / complex(z_x), charge_x=z_x, charge_y=z_y)


def curve_phase(flag: ParabolicGeometry, omega: InvariantClass, psi: InvariantClass, root: Root) -> float:
    """Θ_{P¹_β} = Arg(e^{-iπ/2} Z_{P¹_β}(ψ)) = arctan q_β"""
    z = central_charge(flag, omega, ChargeSource(psi, 1), Curve(root)).value
    rotated = z * GaussianRational(0, -1)
    return rotated.arg()


def divisor_phase(flag: ParabolicGeometry, omega: InvariantClass, psi: InvariantClass, divisor: InvariantClass) -> float:
    """Lift of Arg ∫_D (ω + iψ)^{n-1}, continuous along ψ ↦ tψ"""
    flag.check_invariant(divisor)
    if not effective(divisor, flag):
        raise NotEffective(f"divisor class {divisor} is not effective")
    a = eigenvalues(flag, omega, psi)
    b = eigenvalues(flag, omega, divisor)
    theta_hat = arctan_sum(a)

    # S = Σ_α b_α Π_{β≠α}(1 + i a_β), each term within π/2 of Θ̂
    s = GaussianRational(0, 0)
    for k, b_k in enumerate(b):
        if b_k == 0:
            continue
        s = s + prod((GaussianRational(1, a_j) for j, a_j in enumerate(a) if j != k),
                     start=GaussianRational.one()) * b_k
    relative = complex(s) * np.exp(-1j * theta_hat)
    return theta_hat + float(np.angle(relative))


def phase_defect(flag: ParabolicGeometry, omega: InvariantClass, psi: InvariantClass, target: Target) -> float:
    """Θ_Y - (Θ̂ - (n - dim Y)π/2)"""
    flag.check_kahler(omega)
    theta_hat = arctan_sum(eigenvalues(flag, omega, psi))
    if isinstance(target, WholeSpace):
        theta_y = theta_hat
    elif isinstance(target, Curve):
        theta_y = curve_phase(flag, omega, psi, target.root)
    elif isinstance(target, Divisor):
        theta_y = divisor_phase(flag, omega, psi, target.cls)
    else:
        raise TypeError(f"unknown charge target {target!r}")
    codimension = flag.dimension - target.dimension(flag)
    return theta_y - (theta_hat - codimension * np.pi / 2)


def bundle_phase(flag: ParabolicGeometry, omega: InvariantClass, bundle: SplitBundle) -> float:
    """Θ_ω(E) = Σ_β (Arg Z(E, P¹_β) - π/2)"""
    return float(sum(
        central_charge(flag, omega, ChargeSource.from_bundle(bundle), Curve(beta)).arg - np.pi / 2
        for beta in flag.phi
    ))


def is_supercritical_bundle(flag: ParabolicGeometry, omega: InvariantClass, bundle: SplitBundle) -> bool:
    """(n-2)π/2 < Θ_ω(E) < nπ/2"""
    lower, _ = window_thresholds(flag.dimension)
    theta = bundle_phase(flag, omega, bundle)
    return lower < theta < flag.dimension * np.pi / 2


def support_modulus_sq(flag: ParabolicGeometry, omega: InvariantClass, psi: InvariantClass) -> Fraction:
    """|Z_X|², which equals Vol²·Π(1 + q_β²)"""
    return central_charge(flag, omega, psi, WholeSpace()).value.abs_sq()
