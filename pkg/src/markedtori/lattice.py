"""Point distributions in the plane: exact disk counts and visible points.

A `Lattice` is an affine grid (p1 + q1 Z, p2 + q2 Z) with rational data, a
`PointDistribution` a finite union of them.  Counting clears a common
denominator and works on integers, so the closed disk test is exact.

Visibility follows the usual convention for point distributions: p is
visible when no q = lam*p with 0 < |lam| < 1 lies in the distribution, so
it is decided along the whole line through the origin, not just the ray.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, isqrt, lcm

import numpy as np

from . import _kernel
from .exactgeom import PlanarVector, RationalLike, as_rational
from .growth import GrowthConstant
from .numtheory import coprime_residues, inverse_totient_product, l_chi0_coefficient


class VisibilityConvention(enum.Enum):
    DIRECTED = "directed"
    UNORIENTED = "unoriented"


def _crt(a: int, m: int, b: int, n: int):
    """Solve x = a mod m, x = b mod n; return (x, lcm) or None."""
    g = gcd(m, n)
    if (b - a) % g:
        return None
    l = m // g * n
    k = ((b - a) // g * pow(m // g, -1, n // g)) % (n // g) if n // g > 1 else 0
    return (a + m * k) % l, l


@dataclass(frozen=True)
class Lattice:
    """The grid (offset.x + moduli[0]*Z, offset.y + moduli[1]*Z).

    The offset is reduced into [0, q1) x [0, q2) so that equal point sets
    compare equal.
    """

    offset: PlanarVector
    moduli: tuple[Fraction, Fraction]

    def __post_init__(self):
        q1, q2 = (as_rational(q) for q in self.moduli)
        if q1 <= 0 or q2 <= 0:
            raise ValueError("lattice moduli must be positive")
        ox = self.offset.x - q1 * ((self.offset.x / q1).__floor__())
        oy = self.offset.y - q2 * ((self.offset.y / q2).__floor__())
        object.__setattr__(self, "moduli", (q1, q2))
        object.__setattr__(self, "offset", PlanarVector(ox, oy))

    @classmethod
    def of(cls, p1: RationalLike, p2: RationalLike, q1: RationalLike, q2: RationalLike) -> "Lattice":
        return cls(PlanarVector(p1, p2), (as_rational(q1), as_rational(q2)))

    def contains(self, v: PlanarVector) -> bool:
        q1, q2 = self.moduli
        return ((v.x - self.offset.x) / q1).denominator == 1 and ((v.y - self.offset.y) / q2).denominator == 1

    def denominators(self) -> list[int]:
        return [self.offset.x.denominator, self.offset.y.denominator,
                self.moduli[0].denominator, self.moduli[1].denominator]

    def scaled(self, factor: RationalLike) -> "Lattice":
        f = as_rational(factor)
        return Lattice(self.offset * f, (self.moduli[0] * f, self.moduli[1] * f))

    def intersect(self, other: "Lattice") -> "Lattice | None":
        L = lcm(*self.denominators(), *other.denominators())
        coords = []
        for axis in (0, 1):
            a = int(self.offset.as_tuple()[axis] * L)
            m = int(self.moduli[axis] * L)
            b = int(other.offset.as_tuple()[axis] * L)
            n = int(other.moduli[axis] * L)
            sol = _crt(a, m, b, n)
            if sol is None:
                return None
            coords.append(sol)
        (x, lx), (y, ly) = coords
        return Lattice.of(Fraction(x, L), Fraction(y, L), Fraction(lx, L), Fraction(ly, L))

    def __str__(self) -> str:
        q1, q2 = self.moduli
        return f"({self.offset.x} + {q1}Z, {self.offset.y} + {q2}Z)"


@dataclass(frozen=True)
class PointDistribution:
    """Finite union of lattices; `punctured` removes the origin from the set."""

    components: tuple[Lattice, ...]
    punctured: bool = False

    def __post_init__(self):
        comps = tuple(self.components)
        if not comps:
            raise ValueError("a point distribution needs at least one lattice")
        if len(set(comps)) != len(comps):
            raise ValueError("duplicate lattice in point distribution")
        object.__setattr__(self, "components", comps)

    @classmethod
    def single(cls, lattice: Lattice, punctured: bool = False) -> "PointDistribution":
        return cls((lattice,), punctured)

    def contains_origin(self) -> bool:
        if self.punctured:
            return False
        zero = PlanarVector(0, 0)
        return any(c.contains(zero) for c in self.components)

    def is_disjoint(self) -> bool:
        comps = self.components
        return all(comps[i].intersect(comps[j]) is None
                   for i in range(len(comps)) for j in range(i + 1, len(comps)))

    def common_denominator(self, radius: Fraction | None = None) -> int:
        dens = [d for c in self.components for d in c.denominators()]
        if radius is not None:
            dens.append(radius.denominator)
        return lcm(*dens)

    def __len__(self) -> int:
        return len(self.components)


def integer_lattice(punctured: bool = False) -> PointDistribution:
    return PointDistribution.single(Lattice.of(0, 0, 1, 1), punctured)


def _radius(T: RationalLike) -> Fraction:
    t = as_rational(T)
    if t < 0:
        raise ValueError("radius must be nonnegative")
    return t


def _scaled_components(G: PointDistribution, T: Fraction):
    L = G.common_denominator(T)
    comps = []
    for c in G.components:
        comps.append((int(c.offset.x * L), int(c.offset.y * L), int(c.moduli[0] * L), int(c.moduli[1] * L)))
    bound = int(T * L) ** 2
    return L, comps, bound


def count_points(G: PointDistribution, T: RationalLike) -> int:
    """Exact number of points of G in the closed disk of radius T."""
    t = _radius(T)
    L, comps, bound = _scaled_components(G, t)
    if len(comps) == 1 or G.is_disjoint():
        total = sum(_kernel.count_disk(cx, cy, mx, my, bound) for cx, cy, mx, my in comps)
    else:
        xs, ys = [], []
        for cx, cy, mx, my in comps:
            for vx, vy in _kernel.disk_points(cx, cy, mx, my, bound):
                xs.append(vx)
                ys.append(vy)
        pts = np.stack([np.concatenate(xs), np.concatenate(ys)], axis=1) if xs else np.zeros((0, 2), np.int64)
        total = len(np.unique(pts, axis=0))
    if G.punctured and any(c.contains(PlanarVector(0, 0)) for c in G.components):
        total -= 1
    return total


def density_coefficient(G: PointDistribution) -> Fraction:
    """Coefficient d with count_points(G, T) ~ d * pi * T^2."""
    if not G.is_disjoint():
        raise ValueError("density of overlapping components is not additive")
    return sum((1 / (c.moduli[0] * c.moduli[1]) for c in G.components), Fraction(0))


def gauss_error_bound(lattice: Lattice, T: RationalLike) -> float:
    """Upper bound on |count - pi T^2/(q1 q2)| from the rectangle-tiling argument.

    The first part covers the centred grid, the second the shift by the offset.
    """
    t = float(_radius(T))
    q1, q2 = (float(q) for q in lattice.moduli)
    dens = np.pi / (q1 * q2)
    diag = (q1 * q1 + q2 * q2) ** 0.5
    s = float(lattice.offset.x) ** 2 + float(lattice.offset.y) ** 2
    s = s ** 0.5
    return dens * (2 * (t + s) * diag + diag * diag) + dens * (2 * t * s + s * s)


@dataclass
class _PointCloud:
    """Points of a distribution in a disk, as scaled integer arrays."""

    scale: int
    vx: np.ndarray
    vy: np.ndarray
    component: np.ndarray

    @property
    def norm2(self) -> np.ndarray:
        return self.vx * self.vx + self.vy * self.vy


def _point_cloud(G: PointDistribution, T: Fraction) -> _PointCloud:
    L, comps, bound = _scaled_components(G, T)
    if not _kernel.fits_int64(isqrt(bound) + max(max(c[2], c[3]) for c in comps)):
        raise OverflowError("coordinates too large for the vectorised path")
    xs, ys, cs = [], [], []
    for idx, (cx, cy, mx, my) in enumerate(comps):
        for vx, vy in _kernel.disk_points(cx, cy, mx, my, bound):
            xs.append(vx)
            ys.append(vy)
            cs.append(np.full(vx.shape, idx, dtype=np.int64))
    if not xs:
        empty = np.zeros(0, dtype=np.int64)
        return _PointCloud(L, empty, empty.copy(), empty.copy())
    vx, vy, comp = np.concatenate(xs), np.concatenate(ys), np.concatenate(cs)
    if len(comps) > 1 and not G.is_disjoint():
        _, first = np.unique(np.stack([vx, vy], axis=1), axis=0, return_index=True)
        first.sort()
        vx, vy, comp = vx[first], vy[first], comp[first]
    return _PointCloud(L, vx, vy, comp)


@dataclass
class VisibleSet:
    """Visible points of a distribution inside a disk, in scaled integer form.

    `line` numbers the lines through the origin; both members of a visible
    antipodal pair share a line number.
    """

    scale: int
    vx: np.ndarray
    vy: np.ndarray
    component: np.ndarray
    line: np.ndarray

    @property
    def norm2(self) -> np.ndarray:
        return self.vx * self.vx + self.vy * self.vy

    def count(self, conv: VisibilityConvention = VisibilityConvention.UNORIENTED) -> int:
        if conv is VisibilityConvention.DIRECTED:
            return int(self.vx.size)
        return int(np.unique(self.line).size)

    def representatives(self) -> np.ndarray:
        """Mask choosing one point per line: the lexicographic max of a visible pair."""
        keep = np.ones(self.vx.size, dtype=bool)
        if self.vx.size == 0:
            return keep
        order = np.argsort(self.line, kind="stable")
        line_sorted = self.line[order]
        dup = np.zeros(self.vx.size, dtype=bool)
        dup[order[1:]] = line_sorted[1:] == line_sorted[:-1]
        paired = dup.copy()
        paired[order[:-1]] |= line_sorted[1:] == line_sorted[:-1]
        keep[paired] = _kernel.lexmax_half(self.vx[paired], self.vy[paired])
        return keep


def visible_set(G: PointDistribution, T: RationalLike) -> VisibleSet:
    if G.contains_origin():
        raise ValueError("visible points are undefined when the origin belongs to the distribution")
    t = _radius(T)
    cloud = _point_cloud(G, t)
    vx, vy, comp = cloud.vx, cloud.vy, cloud.component
    nz = (vx != 0) | (vy != 0)
    vx, vy, comp = vx[nz], vy[nz], comp[nz]
    g = np.gcd(vx, vy)
    kx, ky = vx // g, vy // g
    flip = ~_kernel.lexmax_half(kx, ky)
    kx = np.where(flip, -kx, kx)
    ky = np.where(flip, -ky, ky)
    n2 = vx * vx + vy * vy
    order = np.lexsort((n2, ky, kx))
    kx, ky, n2 = kx[order], ky[order], n2[order]
    vx, vy, comp = vx[order], vy[order], comp[order]
    new_line = np.ones(kx.size, dtype=bool)
    new_line[1:] = (kx[1:] != kx[:-1]) | (ky[1:] != ky[:-1])
    line = np.cumsum(new_line) - 1
    line_min = n2[new_line][line] if kx.size else n2
    vis = n2 == line_min
    return VisibleSet(cloud.scale, vx[vis], vy[vis], comp[vis], line[vis])


def visible_points(G: PointDistribution, T: RationalLike,
                   conv: VisibilityConvention = VisibilityConvention.UNORIENTED) -> set[PlanarVector]:
    vs = visible_set(G, T)
    mask = np.ones(vs.vx.size, dtype=bool)
    if conv is VisibilityConvention.UNORIENTED:
        mask = vs.representatives()
    L = vs.scale
    return {PlanarVector(Fraction(int(x), L), Fraction(int(y), L)) for x, y in zip(vs.vx[mask], vs.vy[mask])}


def count_visible(G: PointDistribution, T: RationalLike,
                  conv: VisibilityConvention = VisibilityConvention.UNORIENTED) -> int:
    return visible_set(G, T).count(conv)


def build_G_In(n: int) -> PointDistribution:
    """Union over k in I^n of the lattices (nZ + k, nZ)."""
    if n < 2:
        raise ValueError("G_{I^n} needs n >= 2 (I^1 is empty)")
    return PointDistribution(tuple(Lattice.of(k, 0, n, n) for k in sorted(coprime_residues(n))))


def congruence_distribution(p: int, q: int, n: int) -> PointDistribution:
    """Union over k in I^n of (k*(p, q) + nZ^2).

    Its visible points are the primitive directions w with p*w_y = q*w_x
    (mod n); for (p, q) = (1, 0) this is G_{I^n}.  Component order follows
    the sorted residues k.
    """
    if n < 2:
        raise ValueError("n must be >= 2")
    if gcd(gcd(p, q), n) != 1:
        raise ValueError("need gcd(p, q, n) == 1")
    return PointDistribution(tuple(Lattice.of((k * p) % n, (k * q) % n, n, n)
                                   for k in sorted(coprime_residues(n))))


def completion_in_Z2(n: int, r: int) -> PointDistribution:
    """Z^2-completion of the single lattice (nZ + r, nZ); it is G_{I^n} for every unit r."""
    if n < 2 or gcd(r, n) != 1:
        raise ValueError("r must be a unit mod n, n >= 2")
    return build_G_In(n)


def completion_witness(point: PlanarVector, n: int, r: int) -> int:
    """Smallest positive integer m with m*point in (nZ + r, nZ), for points of G_{I^n}."""
    x = int(point.x)
    l = x % n
    if point.x.denominator != 1 or point.y.denominator != 1 or int(point.y) % n or gcd(l, n) != 1:
        raise ValueError(f"{point} is not in G_I^{n}")
    m = (r * pow(l, -1, n)) % n if n > 1 else 1
    return m or n


def multiplicity_coefficient(n: int) -> Fraction:
    """c(n) with N(G_{I^n}, T) ~ c(n) * pi^2 * N_unoriented(visible G_{I^n}, T)."""
    if n < 2:
        raise ValueError("n must be >= 2")
    return l_chi0_coefficient(n) / 3


def visible_density_G_In(n: int) -> GrowthConstant:
    """lim N(visible G_{I^n}, T)/T^2, unoriented: (3/n) prod (1 + 1/p)^-1 / pi."""
    if n < 2:
        raise ValueError("n must be >= 2")
    return GrowthConstant.over_pi(Fraction(3, n) * inverse_totient_product(n))


def scale_distribution(G: PointDistribution, factor: RationalLike) -> PointDistribution:
    f = as_rational(factor)
    if f <= 0:
        raise ValueError("scale factor must be positive")
    return PointDistribution(tuple(c.scaled(f) for c in G.components), G.punctured)
