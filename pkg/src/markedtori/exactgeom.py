"""Exact rational planar arithmetic.

Every counting decision in the package goes through the types here (or
through integer arrays obtained by clearing a common denominator), so no
floating point value ever decides whether a point is in a disk or on a
segment.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Optional, Union

Rational = Fraction
RationalLike = Union[int, str, Fraction]


def as_rational(value: RationalLike) -> Fraction:
    """Coerce ints, fraction strings ("3/4") and Fractions to a Fraction.

    Floats are refused: a float has already lost the exact value.
    """
    if isinstance(value, float):
        raise TypeError("floats are not exact; pass a Fraction or a 'p/q' string")
    return Fraction(value)


@dataclass(frozen=True, order=True)
class PlanarVector:
    x: Fraction
    y: Fraction

    def __post_init__(self):
        object.__setattr__(self, "x", as_rational(self.x))
        object.__setattr__(self, "y", as_rational(self.y))

    def __add__(self, other: "PlanarVector") -> "PlanarVector":
        return PlanarVector(self.x + other.x, self.y + other.y)

    def __sub__(self, other: "PlanarVector") -> "PlanarVector":
        return PlanarVector(self.x - other.x, self.y - other.y)

    def __neg__(self) -> "PlanarVector":
        return PlanarVector(-self.x, -self.y)

    def __mul__(self, scalar: RationalLike) -> "PlanarVector":
        s = as_rational(scalar)
        return PlanarVector(self.x * s, self.y * s)

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return self.x == 0 and self.y == 0

    def cross(self, other: "PlanarVector") -> Fraction:
        return self.x * other.y - self.y * other.x

    def denominator(self) -> int:
        """Least common denominator of both coordinates."""
        return lcm(self.x.denominator, self.y.denominator)

    def as_tuple(self) -> tuple[Fraction, Fraction]:
        return (self.x, self.y)

    def __str__(self) -> str:
        return f"({self.x}, {self.y})"


@dataclass(frozen=True, order=True)
class TorusPoint:
    """A point of R^2/Z^2, stored by its representative in [0,1)^2."""

    coords: PlanarVector

    def __post_init__(self):
        c = self.coords
        if not (0 <= c.x < 1 and 0 <= c.y < 1):
            raise ValueError(f"torus point {c} is not in the unit square; use wrap_to_torus")

    @classmethod
    def of(cls, x: RationalLike, y: RationalLike) -> "TorusPoint":
        return wrap_to_torus(PlanarVector(x, y))

    @property
    def x(self) -> Fraction:
        return self.coords.x

    @property
    def y(self) -> Fraction:
        return self.coords.y

    def __str__(self) -> str:
        return str(self.coords)


def _frac_part(q: Fraction) -> Fraction:
    return q - (q.numerator // q.denominator)


def wrap_to_torus(v: PlanarVector) -> TorusPoint:
    return TorusPoint(PlanarVector(_frac_part(v.x), _frac_part(v.y)))


def squared_norm(v: PlanarVector) -> Fraction:
    return v.x * v.x + v.y * v.y


def in_closed_disk(v: PlanarVector, radius: RationalLike) -> bool:
    r = as_rational(radius)
    return squared_norm(v) <= r * r


def rational_ratio(v: PlanarVector, w: PlanarVector) -> Optional[Fraction]:
    """Return r with w == r*v, or None when the vectors are not parallel."""
    if v.is_zero():
        raise ValueError("reference vector must be nonzero")
    if v.cross(w) != 0:
        return None
    return w.x / v.x if v.x != 0 else w.y / v.y
