"""Closed-form quadratic growth constants and the regimes in which they apply."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Optional, Sequence, Union

from .counting import Marking, decompose_classes, rational_division_events
from .exactgeom import PlanarVector, TorusPoint, wrap_to_torus
from .growth import GrowthConstant
from .numtheory import (coprime_inverse_square_sum, coprime_residues, inverse_square_prefix,
                        inverse_totient_product, l_chi0_coefficient)

__all__ = [
    "IRRATIONAL", "GrowthConstant", "MarkingRegime", "UnsupportedRegime",
    "sc_constant_two_marked", "po_constant_two_marked",
    "sc_constant_general_position", "po_constant_general_position",
    "po_constant_decomposable", "classify_regime", "target_constant",
    "continuity_sweep", "fibonacci_points", "sandwich_bounds", "sandwich_failures",
    "PI_LO", "PI_HI",
]

# pi to 50 places, as exact rational brackets
PI_LO = Fraction("3.14159265358979323846264338327950288419716939937510")
PI_HI = PI_LO + Fraction(1, 10**49)


class _Irrational:
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "IRRATIONAL"


IRRATIONAL = _Irrational()

PointLike = Union[TorusPoint, PlanarVector, tuple, _Irrational]


class UnsupportedRegime(ValueError):
    """No closed form is implemented for this marking; count it instead."""


def _rational_point(x) -> tuple[int, int, int]:
    if isinstance(x, TorusPoint):
        pt = x
    elif isinstance(x, PlanarVector):
        pt = wrap_to_torus(x)
    else:
        pt = wrap_to_torus(PlanarVector(*x))
    n = pt.coords.denominator()
    if n == 1:
        raise ValueError("second marked point coincides with the first")
    return int(pt.x * n), int(pt.y * n), n


def sc_constant_two_marked(x: PointLike) -> GrowthConstant:
    if x is IRRATIONAL:
        return GrowthConstant(6, 1)
    _, _, n = _rational_point(x)
    s = sum((Fraction(1, i * i) - Fraction(1, n * n) for i in coprime_residues(n)), Fraction(0))
    return GrowthConstant.over_pi(6 * (1 + s / l_chi0_coefficient(n)))


def po_constant_two_marked(x: PointLike) -> GrowthConstant:
    if x is IRRATIONAL:
        return GrowthConstant.over_pi(6)
    _, _, n = _rational_point(x)
    return GrowthConstant.over_pi(6 * (1 - inverse_totient_product(n) / (2 * n)))


def _check_points(k: int) -> None:
    if k < 1:
        raise ValueError("need at least one marked point")


def sc_constant_general_position(k: int) -> GrowthConstant:
    # each new point adds k*pi (cross connections) + 3/pi (its loops)
    _check_points(k)
    return GrowthConstant(3 * k, Fraction(k * (k - 1), 2))


def po_constant_general_position(k: int) -> GrowthConstant:
    _check_points(k)
    return GrowthConstant.over_pi(3 * k)


def _class_difference(m: Marking, cls: Sequence[int]) -> TorusPoint:
    return m.difference(cls[0], cls[1])


def po_constant_decomposable(m: Marking) -> GrowthConstant:
    total = GrowthConstant()
    for cls in decompose_classes(m):
        if len(cls) == 1:
            total = total + GrowthConstant.over_pi(3)
        elif len(cls) == 2:
            total = total + po_constant_two_marked(_class_difference(m, cls))
        else:
            raise UnsupportedRegime(f"class {cls} has {len(cls)} relatively rational points")
    return total


@dataclass(frozen=True)
class MarkingRegime:
    kind: str
    n: Optional[int] = None
    p1: Optional[int] = None
    p2: Optional[int] = None
    n_points: int = 0
    classes: tuple[tuple[int, ...], ...] = ()

    def __post_init__(self):
        kinds = ("rational_two_marked", "general_position", "decomposable_po", "unsupported")
        if self.kind not in kinds:
            raise ValueError(f"unknown regime {self.kind!r}")
        if self.kind == "rational_two_marked" and gcd(gcd(self.p1, self.p2), self.n) != 1:
            raise ValueError("rational_two_marked needs gcd(p1, p2, n) == 1")


def classify_regime(m: Marking, probe_radius: int = 4) -> MarkingRegime:
    """Pick the closed-form family that applies to m.

    Pairwise irrational markings with three or more points are probed for
    rational division events up to `probe_radius`; any event means the
    marking is not in general position.
    """
    classes = tuple(tuple(c) for c in decompose_classes(m))
    k = len(m)
    if k == 2 and len(classes) == 1:
        p1, p2, n = _rational_point(m.difference(0, 1))
        return MarkingRegime("rational_two_marked", n, p1, p2, k, classes)
    if all(len(c) == 1 for c in classes):
        if k >= 3 and rational_division_events(m, probe_radius):
            return MarkingRegime("unsupported", n_points=k, classes=classes)
        return MarkingRegime("general_position", n_points=k, classes=classes)
    if all(len(c) <= 2 for c in classes):
        return MarkingRegime("decomposable_po", n_points=k, classes=classes)
    return MarkingRegime("unsupported", n_points=k, classes=classes)


def target_constant(m: Marking, kind: str, regime: Optional[MarkingRegime] = None) -> GrowthConstant:
    if kind not in ("sc", "po"):
        raise ValueError(f"kind must be 'sc' or 'po', got {kind!r}")
    r = regime or classify_regime(m)
    if r.kind == "rational_two_marked":
        x = TorusPoint.of(Fraction(r.p1, r.n), Fraction(r.p2, r.n))
        return sc_constant_two_marked(x) if kind == "sc" else po_constant_two_marked(x)
    if r.kind == "general_position":
        f = sc_constant_general_position if kind == "sc" else po_constant_general_position
        return f(r.n_points)
    if r.kind == "decomposable_po" and kind == "po":
        return po_constant_decomposable(m)
    raise UnsupportedRegime("no closed form implemented for this marking; count it instead")


def continuity_sweep(seq: Sequence[PointLike], kind: str) -> list[tuple[PointLike, GrowthConstant]]:
    f = {"sc": sc_constant_two_marked, "po": po_constant_two_marked}[kind]
    return [(x, f(x)) for x in seq]


def fibonacci_points(k_lo: int, k_hi: int) -> list[TorusPoint]:
    """(F_k / F_{k+1}, 0) for k_lo <= k <= k_hi, with F_1 = F_2 = 1."""
    fib = [0, 1]
    while len(fib) < k_hi + 2:
        fib.append(fib[-1] + fib[-2])
    return [TorusPoint.of(Fraction(fib[k], fib[k + 1]), 0) for k in range(k_lo, k_hi + 1)]


def sandwich_bounds(n: int, prefix: Optional[list[Fraction]] = None) -> tuple[Fraction, Fraction, Fraction]:
    """(lower, middle, upper) with pi^2 replaced by its outer rational brackets.

    middle = prod (1 - 1/p^2)^-1 * sum_{i in I^n} 1/i^2; lower uses PI_HI and
    upper uses PI_LO, so lower < middle < upper certifies the real bounds.
    """
    if n < 2:
        raise ValueError("n must be >= 2")
    middle = coprime_inverse_square_sum(n, prefix) / l_chi0_coefficient(n)
    P = inverse_totient_product(n)
    lower = PI_HI * PI_HI / 6 * (1 - P / n)
    upper = PI_LO * PI_LO / 6 * (1 - P / (4 * n))
    return lower, middle, upper


def sandwich_failures(n_max: int) -> list[int]:
    """Every n in 2..n_max for which the two-sided bound fails (empty when it holds)."""
    prefix = inverse_square_prefix(n_max)
    bad = []
    for n in range(2, n_max + 1):
        lo, mid, hi = sandwich_bounds(n, prefix)
        if not lo < mid < hi:
            bad.append(n)
    return bad
