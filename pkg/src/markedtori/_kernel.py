"""Vectorised integer kernels shared by the lattice and counting modules.

Everything here works on int64 arrays of scaled coordinates (all rational
data multiplied by a common denominator).  Callers check `fits_int64`
before using these and fall back to pure Python integers otherwise.
"""
from __future__ import annotations

from math import isqrt

import numpy as np

CHUNK = 1 << 20
_INT64_SAFE = 1 << 61


def fits_int64(max_coord: int, max_other: int = 1) -> bool:
    """True when squared norms and cross products of the given sizes stay exact."""
    m = max(abs(max_coord), 1)
    o = max(abs(max_other), 1)
    return 2 * m * m < _INT64_SAFE and 4 * m * o < _INT64_SAFE


def disk_rows(cx: int, cy: int, mx: int, my: int, bound: int):
    """Rows of the lattice (cx + mx*Z, cy + my*Z) meeting the disk |v|^2 <= bound.

    Returns parallel lists (vy, a_lo, a_hi) with rows ascending in vy; the
    points of a row are (cx + mx*a, vy) for a_lo <= a <= a_hi.
    """
    if bound < 0:
        return [], [], []
    r_out = isqrt(bound)
    b_lo = -((r_out + cy) // my)
    b_hi = (r_out - cy) // my
    vys, los, his = [], [], []
    for b in range(b_lo, b_hi + 1):
        vy = cy + my * b
        rest = bound - vy * vy
        if rest < 0:
            continue
        r = isqrt(rest)
        a_lo = -((r + cx) // mx)
        a_hi = (r - cx) // mx
        if a_lo <= a_hi:
            vys.append(vy)
            los.append(a_lo)
            his.append(a_hi)
    return vys, los, his


def count_disk(cx: int, cy: int, mx: int, my: int, bound: int) -> int:
    _, los, his = disk_rows(cx, cy, mx, my, bound)
    return sum(h - l + 1 for l, h in zip(los, his))


def disk_points(cx: int, cy: int, mx: int, my: int, bound: int, chunk: int = CHUNK):
    """Yield (vx, vy) int64 arrays covering the lattice points in the disk, row by row."""
    vys, los, his = disk_rows(cx, cy, mx, my, bound)
    start = 0
    nrows = len(vys)
    while start < nrows:
        total = 0
        stop = start
        while stop < nrows and (total == 0 or total + his[stop] - los[stop] + 1 <= chunk):
            total += his[stop] - los[stop] + 1
            stop += 1
        vy_rows = np.asarray(vys[start:stop], dtype=np.int64)
        lo = np.asarray(los[start:stop], dtype=np.int64)
        cnt = np.asarray(his[start:stop], dtype=np.int64) - lo + 1
        row_start = np.concatenate(([0], np.cumsum(cnt)[:-1]))
        idx = np.arange(total, dtype=np.int64)
        a = np.repeat(lo - row_start, cnt) + idx
        vx = cx + mx * a
        vy = np.repeat(vy_rows, cnt)
        yield vx, vy
        start = stop


def bezout_coefficients(u: np.ndarray, v: np.ndarray):
    """Vectorised extended Euclid: s, t with s*u + t*v == gcd(u, v).

    Works for arbitrary signs; gcd is returned nonnegative.  Finished
    entries are dropped from the working set each round.
    """
    r0 = np.abs(u).astype(np.int64)
    r1 = np.abs(v).astype(np.int64)
    s0, s1 = np.ones_like(r0), np.zeros_like(r0)
    t0, t1 = np.zeros_like(r0), np.ones_like(r0)
    idx = np.nonzero(r1)[0]
    a, b = r0[idx], r1[idx]
    sa, sb = s0[idx], s1[idx]
    ta, tb = t0[idx], t1[idx]
    while idx.size:
        q = a // b
        a, b = b, a - q * b
        sa, sb = sb, sa - q * sb
        ta, tb = tb, ta - q * tb
        done = b == 0
        if done.any():
            d = idx[done]
            r0[d], s0[d], t0[d] = a[done], sa[done], ta[done]
            keep = ~done
            idx, a, b, sa, sb, ta, tb = idx[keep], a[keep], b[keep], sa[keep], sb[keep], ta[keep], tb[keep]
    s0 = np.where(u < 0, -s0, s0)
    t0 = np.where(v < 0, -t0, t0)
    return s0, t0, r0


def first_hits(wx: np.ndarray, wy: np.ndarray, dx: int, dy: int, modulus: int) -> np.ndarray:
    """Smallest tau in [1, modulus] with tau*w == (dx, dy) mod modulus, per primitive w.

    Entries with no solution get modulus + 1 (larger than any valid tau).
    For primitive w the multiples tau*w mod modulus have exact period
    `modulus`, so the solution, when it exists, is unique in that range.
    """
    out = np.full(wx.shape, modulus + 1, dtype=np.int64)
    if dx % modulus == 0 and dy % modulus == 0:
        out[:] = modulus
        return out
    on_line = (dx * wy - dy * wx) % modulus == 0
    if not on_line.any():
        return out
    sx, sy, _ = bezout_coefficients(wx[on_line], wy[on_line])
    tau = (sx * dx + sy * dy) % modulus
    out[on_line] = np.where(tau == 0, modulus, tau)
    return out


def lexmax_half(vx: np.ndarray, vy: np.ndarray) -> np.ndarray:
    """Mask of vectors that are the lexicographic max of {v, -v}."""
    return (vx > 0) | ((vx == 0) & (vy > 0))
