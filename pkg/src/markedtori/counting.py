"""Saddle connections and cylinder families on a marked torus R^2/Z^2.

Two independent routes are provided:

* `reference_saddle_connections` walks every candidate vector with Fraction
  arithmetic and solves for interior hits directly.  It is slow and meant
  for small radii.
* The vectorised scan (`enumerate_saddle_connections`, `count_sc`, ...)
  clears the common denominator D of the marking and works on int64 arrays.
  A candidate V (scaled by D) from marking i is blocked by marking k iff
  some tau in (0, g) satisfies tau*w = x_k - x_i (mod D), where g is the
  gcd of V's coordinates and w = V/g.  Everything stays in integers.

For rational two-point markings a third, purely lattice-theoretic count
(`lattice_count_sc_two_marked`) assembles the same numbers from visible
points of congruence point distributions.
"""
from __future__ import annotations

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from math import ceil, floor, gcd, isqrt, lcm
from typing import Iterable, Optional, Sequence

import numpy as np

from . import _kernel
from .exactgeom import (PlanarVector, RationalLike, TorusPoint, as_rational, rational_ratio,
                        squared_norm, wrap_to_torus)
from .growth import GrowthConstant
from .lattice import (Lattice, VisibilityConvention, congruence_distribution, integer_lattice,
                      visible_set)
from .numtheory import coprime_residues

log = logging.getLogger(__name__)


def _as_torus_point(p) -> TorusPoint:
    if isinstance(p, TorusPoint):
        return p
    if isinstance(p, PlanarVector):
        return wrap_to_torus(p)
    x, y = p
    return wrap_to_torus(PlanarVector(x, y))


@dataclass(frozen=True)
class Marking:
    """Ordered, pairwise distinct marked points of the torus.

    `horizon` switches on irrational emulation: a coordinate difference whose
    reduced denominator exceeds the horizon is treated as irrational when
    splitting the marking into relative-rationality classes.  With no
    horizon every difference counts as rational.
    """

    points: tuple[TorusPoint, ...]
    horizon: Optional[int] = None

    def __post_init__(self):
        pts = tuple(_as_torus_point(p) for p in self.points)
        if not pts:
            raise ValueError("no markings")
        if len(set(pts)) != len(pts):
            raise ValueError("marked points must be pairwise distinct")
        if self.horizon is not None and self.horizon < 1:
            raise ValueError("horizon must be a positive integer")
        object.__setattr__(self, "points", pts)

    @classmethod
    def of(cls, *coords, horizon: Optional[int] = None) -> "Marking":
        """Marking.of((0, 0), ("1/2", 0)) style constructor."""
        return cls(tuple(_as_torus_point(c) for c in coords), horizon)

    def __len__(self) -> int:
        return len(self.points)

    @property
    def denominator(self) -> int:
        return lcm(*(p.coords.denominator() for p in self.points))

    def scaled_coords(self) -> tuple[list[int], list[int]]:
        D = self.denominator
        return [int(p.x * D) for p in self.points], [int(p.y * D) for p in self.points]

    def difference(self, i: int, j: int) -> TorusPoint:
        return wrap_to_torus(self.points[j].coords - self.points[i].coords)

    def is_rational_difference(self, i: int, j: int) -> bool:
        if self.horizon is None:
            return True
        d = self.difference(i, j)
        return d.x.denominator <= self.horizon and d.y.denominator <= self.horizon

    @property
    def classes(self) -> list[list[int]]:
        return decompose_classes(self)

    def has_emulated_irrationals(self) -> bool:
        return len(self.classes) > 1

    def check_horizon(self, radius: RationalLike) -> None:
        """Refuse radii at which horizon-emulated irrational points stop looking irrational."""
        if self.horizon is None or not self.has_emulated_irrationals():
            return
        t = as_rational(radius)
        if not self.horizon > 4 * t * len(self):
            raise ValueError(f"horizon {self.horizon} must exceed 4*T*n = {4 * t * len(self)}")

    def without(self, k: int) -> "Marking":
        return Marking(self.points[:k] + self.points[k + 1:], self.horizon)

    def translated(self, v: PlanarVector) -> "Marking":
        return Marking(tuple(wrap_to_torus(p.coords + v) for p in self.points), self.horizon)


@dataclass(frozen=True)
class SaddleConnection:
    from_index: int
    to_index: int
    vector: PlanarVector

    @property
    def squared_length(self) -> Fraction:
        return squared_norm(self.vector)


@dataclass(frozen=True)
class CylinderFamily:
    direction: tuple[int, int]
    circumference: int
    leaf_count: int


@dataclass
class CountReport:
    radius: Fraction
    count: int
    ratio: float
    target: Optional[GrowthConstant] = None

    @property
    def deviation(self) -> Optional[float]:
        if self.target is None:
            return None
        v = self.target.value()
        return (self.ratio - v) / v


def _make_report(radius: Fraction, count: int, target: Optional[GrowthConstant]) -> CountReport:
    ratio = count / float(radius * radius) if radius > 0 else float("nan")
    return CountReport(radius, count, ratio, target)


def decompose_classes(m: Marking) -> list[list[int]]:
    """Relative-rationality classes of the marking, each sorted, ordered by smallest index."""
    parent = list(range(len(m)))

    def find(a: int) -> int:
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for i in range(len(m)):
        for j in range(i + 1, len(m)):
            if m.is_rational_difference(i, j):
                ri, rj = find(i), find(j)
                if ri != rj:
                    parent[max(ri, rj)] = min(ri, rj)
    groups: dict[int, list[int]] = {}
    for i in range(len(m)):
        groups.setdefault(find(i), []).append(i)
    return sorted(groups.values(), key=lambda g: g[0])


def _radius(T: RationalLike) -> Fraction:
    t = as_rational(T)
    if t < 0:
        raise ValueError("radius must be nonnegative")
    return t


# ---------------------------------------------------------------------------
# reference oracle (pure Fraction arithmetic)

def _interior_hit(delta: PlanarVector, v: PlanarVector) -> Optional[Fraction]:
    """Smallest t in (0, 1) with t*v - delta in Z^2, or None."""
    best = None
    if v.x != 0:
        lo, hi = sorted((-delta.x, v.x - delta.x))
        cs = range(floor(lo), ceil(hi) + 1)
        for c in cs:
            t = (delta.x + c) / v.x
            if not 0 < t < 1:
                continue
            u = PlanarVector(delta.x + c, t * v.y)
            if (u.y - delta.y).denominator == 1 and rational_ratio(v, u) == t:
                best = t if best is None else min(best, t)
    else:
        lo, hi = sorted((-delta.y, v.y - delta.y))
        for d in range(floor(lo), ceil(hi) + 1):
            t = (delta.y + d) / v.y
            if 0 < t < 1 and (delta.x).denominator == 1:
                best = t if best is None else min(best, t)
    return best


def reference_saddle_connections(m: Marking, T: RationalLike) -> list[SaddleConnection]:
    """Definition-level enumeration with exact rationals; cost grows like T^3."""
    t = _radius(T)
    t2 = t * t
    n = len(m)
    span = ceil(t) + 1
    out = []
    for i in range(n):
        xi = m.points[i].coords
        for j in range(i, n):
            base = m.points[j].coords - xi
            for b in range(-span, span + 1):
                for a in range(-span, span + 1):
                    v = base + PlanarVector(a, b)
                    if v.is_zero() or squared_norm(v) > t2:
                        continue
                    if i == j and not (v.x > 0 or (v.x == 0 and v.y > 0)):
                        continue
                    if any(_interior_hit(m.points[k].coords - xi, v) is not None for k in range(n)):
                        continue
                    out.append(SaddleConnection(i, j, v))
    return out


# ---------------------------------------------------------------------------
# vectorised scan

@dataclass
class _ScanSetup:
    D: int
    X: list[int]
    Y: list[int]
    bound: int


def _setup(m: Marking, T: Fraction) -> _ScanSetup:
    D = m.denominator
    X, Y = m.scaled_coords()
    DT = D * T
    bound = DT.numerator ** 2 // DT.denominator ** 2
    if not _kernel.fits_int64(isqrt(bound) + 2 * D, D):
        raise OverflowError("marking denominator and radius too large for int64 scan")
    return _ScanSetup(D, X, Y, bound)


def _pair_candidates(s: _ScanSetup, i: int, j: int, directed_loops: bool = False):
    """Candidate vectors from i to j (scaled); loops exclude 0 and keep one of +-v."""
    cx, cy = s.X[j] - s.X[i], s.Y[j] - s.Y[i]
    for vx, vy in _kernel.disk_points(cx, cy, s.D, s.D, s.bound):
        if i == j:
            keep = (vx != 0) | (vy != 0)
            if not directed_loops:
                keep &= _kernel.lexmax_half(vx, vy)
            vx, vy = vx[keep], vy[keep]
        yield vx, vy


def _blocked(s: _ScanSetup, i: int, j: int, vx, vy, blockers: Iterable[int]):
    g = np.gcd(vx, vy)
    wx, wy = vx // g, vy // g
    blocked = np.zeros(vx.shape, dtype=bool)
    multi = np.nonzero(g >= 2)[0]  # tau >= 1, so g == 1 is never blocked
    for k in blockers:
        if k == i or k == j:
            # the endpoints recur only at multiples of the period D
            blocked |= g > s.D
            continue
        tau = _kernel.first_hits(wx[multi], wy[multi], s.X[k] - s.X[i], s.Y[k] - s.Y[i], s.D)
        blocked[multi] |= tau < g[multi]
    return blocked, g, wx, wy


def _accepted_norms(s: _ScanSetup, i: int, j: int, blockers: Sequence[int], workers: int = 1) -> np.ndarray:
    chunks = list(_pair_candidates(s, i, j))

    def work(chunk):
        vx, vy = chunk
        blocked, _, _, _ = _blocked(s, i, j, vx, vy, blockers)
        ok = ~blocked
        return vx[ok] * vx[ok] + vy[ok] * vy[ok]

    if workers > 1 and len(chunks) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(work, chunks))
    else:
        parts = [work(c) for c in chunks]
    return np.concatenate(parts) if parts else np.zeros(0, dtype=np.int64)


def saddle_connection_norms(m: Marking, T: RationalLike, workers: int = 1) -> tuple[int, np.ndarray]:
    """Sorted squared lengths (scaled by D^2) of all saddle connections up to T; returns (D, norms)."""
    t = _radius(T)
    s = _setup(m, t)
    n = len(m)
    parts = [_accepted_norms(s, i, j, range(n), workers) for i in range(n) for j in range(i, n)]
    norms = np.sort(np.concatenate(parts)) if parts else np.zeros(0, dtype=np.int64)
    return s.D, norms


def enumerate_saddle_connections(m: Marking, T: RationalLike) -> list[SaddleConnection]:
    """Every saddle connection of length <= T, each geometric segment once.

    Connections between different points are oriented from the lower index;
    loops are given by the lexicographically larger of +-v.
    """
    t = _radius(T)
    s = _setup(m, t)
    n = len(m)
    out = []
    for i in range(n):
        for j in range(i, n):
            for vx, vy in _pair_candidates(s, i, j):
                blocked, _, _, _ = _blocked(s, i, j, vx, vy, range(n))
                for x, y in zip(vx[~blocked].tolist(), vy[~blocked].tolist()):
                    out.append(SaddleConnection(i, j, PlanarVector(Fraction(x, s.D), Fraction(y, s.D))))
    return out


def _count_at(D: int, norms: np.ndarray, t: Fraction) -> int:
    DT = D * t
    limit = DT.numerator ** 2 // DT.denominator ** 2
    return int(np.searchsorted(norms, limit, side="right"))


def _target(m: Marking, kind: str) -> Optional[GrowthConstant]:
    from .constants import UnsupportedRegime, target_constant
    try:
        return target_constant(m, kind)
    except UnsupportedRegime:
        return None


def count_sc_many(m: Marking, radii: Sequence[RationalLike], workers: int = 1,
                  with_target: bool = True) -> list[CountReport]:
    rs = [_radius(r) for r in radii]
    if not rs:
        return []
    D, norms = saddle_connection_norms(m, max(rs), workers)
    target = _target(m, "sc") if with_target else None
    return [_make_report(r, _count_at(D, norms, r), target) for r in rs]


def count_sc(m: Marking, T: RationalLike, workers: int = 1, with_target: bool = True) -> CountReport:
    return count_sc_many(m, [T], workers, with_target)[0]


def _cylinder_arrays(m: Marking, T: Fraction):
    """Primitive unoriented directions |w| <= T with their leaf counts."""
    D = m.denominator
    X, Y = m.scaled_coords()
    bound = T.numerator ** 2 // T.denominator ** 2
    if not _kernel.fits_int64(isqrt(bound) + 1, D):
        raise OverflowError("radius too large for int64 scan")
    ws, ns, leaves = [], [], []
    Xa = np.asarray(X, dtype=np.int64)
    Ya = np.asarray(Y, dtype=np.int64)
    for wx, wy in _kernel.disk_points(0, 0, 1, 1, bound):
        keep = _kernel.lexmax_half(wx, wy)
        wx, wy = wx[keep], wy[keep]
        keep = np.gcd(wx, wy) == 1
        wx, wy = wx[keep], wy[keep]
        # leaf of marking k in direction w is labelled by cross(x_k, w) mod 1
        res = (wy[:, None] * Xa[None, :] - wx[:, None] * Ya[None, :]) % D
        res.sort(axis=1)
        cnt = 1 + np.count_nonzero(np.diff(res, axis=1), axis=1)
        ws.append(np.stack([wx, wy], axis=1))
        ns.append(wx * wx + wy * wy)
        leaves.append(cnt)
    if not ws:
        z = np.zeros(0, dtype=np.int64)
        return np.zeros((0, 2), dtype=np.int64), z, z.copy()
    return np.concatenate(ws), np.concatenate(ns), np.concatenate(leaves)


def enumerate_cylinders(m: Marking, T: RationalLike) -> list[CylinderFamily]:
    t = _radius(T)
    ws, ns, leaves = _cylinder_arrays(m, t)
    order = np.lexsort((ws[:, 0], ws[:, 1])) if len(ns) else np.zeros(0, dtype=np.int64)
    return [CylinderFamily((int(ws[o, 0]), int(ws[o, 1])), int(ns[o]), int(leaves[o])) for o in order]


def count_po_many(m: Marking, radii: Sequence[RationalLike], with_target: bool = True) -> list[CountReport]:
    rs = [_radius(r) for r in radii]
    if not rs:
        return []
    _, ns, leaves = _cylinder_arrays(m, max(rs))
    order = np.argsort(ns, kind="stable")
    ns, cum = ns[order], np.cumsum(leaves[order])
    target = _target(m, "po") if with_target else None
    out = []
    for r in rs:
        idx = int(np.searchsorted(ns, r.numerator ** 2 // r.denominator ** 2, side="right"))
        out.append(_make_report(r, int(cum[idx - 1]) if idx else 0, target))
    return out


def count_po(m: Marking, T: RationalLike, with_target: bool = True) -> CountReport:
    return count_po_many(m, [T], with_target)[0]


# ---------------------------------------------------------------------------
# rational division of saddle connections by a further marked point

@dataclass
class DivisionEvent:
    """Marking `k` lies inside saddle connections of the marking without k.

    `ratio` is the common length ratio (distance from `pair[0]` over total
    length); `witness` is the affine lattice (in plane coordinates) holding
    every divided connection of the group.
    """

    k: int
    pair: tuple[int, int]
    ratio: Fraction
    witness: Lattice
    members: int
    lattice_ok: bool
    unique_ratio_expected: bool = field(default=False)


def _division_hits(m: Marking, k: int, T: Fraction, directed_loops: bool = False):
    """Yield (i, j, vx, vy, tau, g) for sc of m without k that k lies on."""
    s = _setup(m, T)
    others = [a for a in range(len(m)) if a != k]
    for i in others:
        for j in others:
            if j < i:
                continue
            for vx, vy in _pair_candidates(s, i, j, directed_loops):
                blocked, g, wx, wy = _blocked(s, i, j, vx, vy, others)
                ok = ~blocked
                vx, vy, g, wx, wy = vx[ok], vy[ok], g[ok], wx[ok], wy[ok]
                tau = _kernel.first_hits(wx, wy, s.X[k] - s.X[i], s.Y[k] - s.Y[i], s.D)
                hit = tau < g
                if hit.any():
                    yield i, j, vx[hit], vy[hit], tau[hit], g[hit], s.D


def _is_rational_ratio(m: Marking, r: Fraction) -> bool:
    return m.horizon is None or r.denominator <= m.horizon


def rational_division_events(m: Marking, T: RationalLike) -> list[DivisionEvent]:
    t = _radius(T)
    events = []
    for k in range(len(m)):
        groups: dict[tuple[int, int, Fraction], list[tuple[int, int]]] = {}
        D = m.denominator
        for i, j, vx, vy, tau, g, D in _division_hits(m, k, t):
            for x, y, a, b in zip(vx.tolist(), vy.tolist(), tau.tolist(), g.tolist()):
                r = Fraction(a, b)
                if _is_rational_ratio(m, r):
                    groups.setdefault((i, j, r), []).append((x, y))
        for (i, j, r), vecs in sorted(groups.items()):
            q = r.denominator
            x0, y0 = vecs[0]
            ok = all((x - x0) % (q * D) == 0 and (y - y0) % (q * D) == 0 for x, y in vecs)
            witness = Lattice.of(Fraction(x0, D), Fraction(y0, D), q, q)
            events.append(DivisionEvent(k, (i, j), r, witness, len(vecs), ok,
                                        not m.is_rational_difference(i, j)))
    return events


def count_nonrational_parallel(m: Marking, pair: tuple[int, int], T: RationalLike) -> int:
    """Saddle connections i -> j that are an irrational fraction of a longer parallel one.

    The longer connection runs from i in the marking without j; both
    orientations of loops at i are considered.
    """
    i, j = pair
    if i == j or len(m) < 2:
        return 0
    t = _radius(T)
    total = 0
    for a, b, vx, vy, tau, g, _ in _division_hits(m, j, t, directed_loops=True):
        if a == i:
            ratios = [Fraction(x, y) for x, y in zip(tau.tolist(), g.tolist())]
            total += sum(1 for r in ratios if not _is_rational_ratio(m, r))
        elif b == i and a != b:
            # segment a -> i read from i: k sits at 1 - (last hit) along -v
            total += _reverse_irrational_hits(m, a, i, j, vx, vy, g)
    return total


def _reverse_irrational_hits(m: Marking, a: int, i: int, j: int, vx, vy, g) -> int:
    D = m.denominator
    X, Y = m.scaled_coords()
    wx, wy = -(vx // g), -(vy // g)
    tau = _kernel.first_hits(wx, wy, X[j] - X[i], Y[j] - Y[i], D)
    count = 0
    for t_, g_ in zip(tau.tolist(), g.tolist()):
        if t_ < g_ and not _is_rational_ratio(m, Fraction(t_, g_)):
            count += 1
    return count


# ---------------------------------------------------------------------------
# lattice-theoretic counts for rational two-point markings

def _two_marked_data(x) -> tuple[int, int, int]:
    pt = _as_torus_point(x)
    n = pt.coords.denominator()
    p, q = int(pt.x * n), int(pt.y * n)
    if n < 2:
        raise ValueError("second marking must differ from the first")
    return p, q, n


def lattice_count_sc_two_marked(x, radii: Sequence[RationalLike]) -> list[int]:
    """Saddle connection counts on the torus marked at 0 and x, from lattice data only.

    count = 2 N_V(Z^2) - 2 N_V(G_x) + sum over directed visible w in G_x
    of [t_w |w| <= T], with N_V unoriented visible counts, G_x the
    congruence distribution of x and t_w = (k^-1 mod n)/n for w in the
    component of residue k.
    """
    p, q, n = _two_marked_data(x)
    rs = [_radius(r) for r in radii]
    tmax = max(rs)
    z_vis = visible_set(integer_lattice(punctured=True), tmax)
    z_norms = np.sort(z_vis.norm2)
    G = congruence_distribution(p, q, n)
    ks = sorted(coprime_residues(n))
    inv = [pow(k, -1, n) for k in ks]
    g_vis = visible_set(G, tmax * n)
    # |w| * i/n <= T  <=>  |w|^2 * i^2 <= (n T)^2
    scaled = g_vis.norm2 * np.asarray(inv, dtype=np.int64)[g_vis.component] ** 2
    scaled.sort()
    g_norms = np.sort(g_vis.norm2)
    out = []
    for r in rs:
        lim = r.numerator ** 2 // r.denominator ** 2
        nz = int(np.searchsorted(z_norms, lim, side="right"))
        ng = int(np.searchsorted(g_norms, lim, side="right"))
        nt = (n * r)
        cross = int(np.searchsorted(scaled, nt.numerator ** 2 // nt.denominator ** 2, side="right"))
        out.append(nz - ng + cross)
    return out


def lattice_count_po_two_marked(x, radii: Sequence[RationalLike]) -> list[int]:
    """Cylinder counts for the marking {0, x}: 2 N_V(Z^2) - N_V(G_x), unoriented."""
    p, q, n = _two_marked_data(x)
    rs = [_radius(r) for r in radii]
    tmax = max(rs)
    z_vis = visible_set(integer_lattice(punctured=True), tmax)
    g_vis = visible_set(congruence_distribution(p, q, n), tmax)
    z_rep = np.sort(z_vis.norm2[z_vis.representatives()])
    g_rep = np.sort(g_vis.norm2[g_vis.representatives()])
    out = []
    for r in rs:
        lim = r.numerator ** 2 // r.denominator ** 2
        out.append(2 * int(np.searchsorted(z_rep, lim, side="right"))
                   - int(np.searchsorted(g_rep, lim, side="right")))
    return out


# ---------------------------------------------------------------------------
# markings file

def parse_markings(text: str, horizon: Optional[int] = None) -> Marking:
    """One point per line as 'p1/q1 p2/q2'; '#' comments and blank lines are skipped."""
    pts = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 2:
            raise MarkingsFormatError(lineno, f"expected two coordinates, got {len(parts)}")
        try:
            coords = [Fraction(p) for p in parts]
        except (ValueError, ZeroDivisionError) as exc:
            raise MarkingsFormatError(lineno, str(exc)) from None
        for part, c in zip(parts, coords):
            if "/" in part and part.split("/")[1].strip() != str(c.denominator) and c != 0:
                raise MarkingsFormatError(lineno, f"{part} is not in lowest terms")
        pts.append(wrap_to_torus(PlanarVector(*coords)))
    if not pts:
        raise ValueError("no markings")
    try:
        return Marking(tuple(pts), horizon)
    except ValueError as exc:
        raise MarkingsFormatError(0, str(exc)) from None


def read_markings(path, horizon: Optional[int] = None) -> Marking:
    with open(path, encoding="utf-8") as fh:
        return parse_markings(fh.read(), horizon)


class MarkingsFormatError(ValueError):
    def __init__(self, lineno: int, message: str):
        self.lineno = lineno
        where = f"line {lineno}: " if lineno else ""
        super().__init__(f"{where}{message}")
