from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import pi

from .exactgeom import RationalLike, as_rational


def _term(coef: Fraction, symbol: str, inverse: bool) -> str:
    num, den = coef.numerator, coef.denominator
    if inverse:
        if den == 1:
            return f"{num}/{symbol}"
        return f"{num}/({den}{symbol})"
    lead = "" if num == 1 else ("-" if num == -1 else str(num))
    return f"{lead}{symbol}" if den == 1 else f"{lead}{symbol}/{den}"


@dataclass(frozen=True)
class GrowthConstant:
    """An exact quadratic growth constant coef_inv_pi/pi + coef_pi*pi."""

    coef_inv_pi: Fraction = Fraction(0)
    coef_pi: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "coef_inv_pi", as_rational(self.coef_inv_pi))
        object.__setattr__(self, "coef_pi", as_rational(self.coef_pi))

    @classmethod
    def over_pi(cls, a: RationalLike) -> "GrowthConstant":
        return cls(as_rational(a), Fraction(0))

    def value(self) -> float:
        return float(self.coef_inv_pi) / pi + float(self.coef_pi) * pi

    def __add__(self, other: "GrowthConstant") -> "GrowthConstant":
        return GrowthConstant(self.coef_inv_pi + other.coef_inv_pi, self.coef_pi + other.coef_pi)

    def __sub__(self, other: "GrowthConstant") -> "GrowthConstant":
        return GrowthConstant(self.coef_inv_pi - other.coef_inv_pi, self.coef_pi - other.coef_pi)

    def scaled(self, factor: RationalLike) -> "GrowthConstant":
        f = as_rational(factor)
        return GrowthConstant(self.coef_inv_pi * f, self.coef_pi * f)

    def symbolic(self) -> str:
        parts = []
        if self.coef_pi:
            parts.append(_term(self.coef_pi, "π", inverse=False))
        if self.coef_inv_pi:
            parts.append(_term(self.coef_inv_pi, "π", inverse=True))
        if not parts:
            return "0"
        return " + ".join(parts).replace("+ -", "- ")

    def __str__(self) -> str:
        return f"{self.symbolic()} ≈ {self.value():.12f}"
