"""
Exact Arithmetic Helpers
Rational parsing/formatting and Gaussian rationals ℚ(i)
"""
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Tuple, Union

import numpy as np
import sympy

RationalLike = Union[int, Fraction, str]


def as_fraction(value: RationalLike) -> Fraction:
    """Coerce an int, Fraction or "p/q" string to a Fraction; floats are refused"""
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, Rational):
        return Fraction(int(value.numerator), int(value.denominator))
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"expected an exact rational, got {type(value).__name__}")


def as_fractions(values: Iterable[RationalLike]) -> Tuple[Fraction, ...]:
    return tuple(as_fraction(v) for v in values)


def format_fraction(value: Fraction) -> str:
    """Render as "p" or "p/q" """
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def format_float(value: float, digits: int) -> str:
    return f"{value:.{digits}g}"


@dataclass(frozen=True)
class GaussianRational:
    """An element re + i·im of ℚ(i)"""

    re: Fraction
    im: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, 're', as_fraction(self.re))
        object.__setattr__(self, 'im', as_fraction(self.im))

    @classmethod
    def one(cls) -> 'GaussianRational':
        return cls(Fraction(1), Fraction(0))

    @classmethod
    def unit_power(cls, k: int) -> 'GaussianRational':
        """i^k for any integer k"""
        return [cls(1, 0), cls(0, 1), cls(-1, 0), cls(0, -1)][k % 4]

    def _coerce(self, other) -> 'GaussianRational':
        if isinstance(other, GaussianRational):
            return other
        return GaussianRational(as_fraction(other), Fraction(0))

    def __add__(self, other) -> 'GaussianRational':
        other = self._coerce(other)
        return GaussianRational(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other) -> 'GaussianRational':
        other = self._coerce(other)
        return GaussianRational(self.re - other.re, self.im - other.im)

    def __neg__(self) -> 'GaussianRational':
        return GaussianRational(-self.re, -self.im)

    def __mul__(self, other) -> 'GaussianRational':
        other = self._coerce(other)
        return GaussianRational(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    __rmul__ = __mul__

    def conjugate(self) -> 'GaussianRational':
        return GaussianRational(self.re, -self.im)

    def abs_sq(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    def is_zero(self) -> bool:
        return self.re == 0 and self.im == 0

    def arg(self) -> float:
        """Principal argument in (-π, π]"""
        return float(np.arctan2(float(self.im), float(self.re)))

    def __complex__(self) -> complex:
        return complex(float(self.re), float(self.im))

    def to_sympy(self) -> sympy.Expr:
        return sympy.Rational(self.re.numerator, self.re.denominator) + sympy.I * sympy.Rational(
            self.im.numerator, self.im.denominator
        )

    def __str__(self) -> str:
        sign = '-' if self.im < 0 else '+'
        return f"{format_fraction(self.re)} {sign} {format_fraction(abs(self.im))}i"
