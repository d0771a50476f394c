"""Acceptance checks, one per criterion, each printing a single PASS/FAIL line.

Run with ``pytest tests/test_acceptance.py -v`` (the lines are repeated in the
terminal summary) or directly with ``python tests/test_acceptance.py``.
"""
from __future__ import annotations

import time
from fractions import Fraction as F
from math import gcd, pi

import pytest

from markedtori.constants import (IRRATIONAL, fibonacci_points, sandwich_failures,
                                  sc_constant_two_marked)
from markedtori.counting import Marking, count_po, count_sc, count_sc_many, lattice_count_sc_two_marked
from markedtori.numtheory import l_chi0_coefficient, partial_l_sum
from markedtori.veech import (congruence_branch, cusp_count, index_via_asymptotics, membership_disagreements,
                              orbit_index, orbit_index_bruteforce, ratio_invariant_classes,
                              veech_index)

RESULTS: list[str] = []

FIB = F(10946, 17711)
# a horizon just above 4 * T * (number of points) for T = 1500 and two points
FIB_HORIZON = 12001
# three points sharing the prime denominator 18013, pairwise irrational under horizon 18001
GP_DENOM = 18013
GP_POINTS = ((0, 0), (F(5000, GP_DENOM), F(7001, GP_DENOM)), (F(11111, GP_DENOM), F(2345, GP_DENOM)))
GP_HORIZON = 18001


def _record(num: int, ok: bool, detail: str) -> None:
    line = f"criterion {num:2d}: {'PASS' if ok else 'FAIL'} | {detail}"
    RESULTS.append(line)
    print(line)


def _rel(a: float, b: float) -> float:
    return abs(a - b) / abs(b)


def check_01():
    m = Marking.of((0, 0), (FIB, 0), horizon=FIB_HORIZON)
    m.check_horizon(1500)
    t0 = time.perf_counter()
    r = count_sc(m, 1500)
    dt = time.perf_counter() - t0
    target = 6 / pi + pi
    ok = _rel(r.ratio, target) < 0.02 and r.target is not None and abs(r.target.value() - target) < 1e-12
    return ok, f"sc ratio {r.ratio:.5f} vs 6/π + π = {target:.5f} (rel {_rel(r.ratio, target):.2e}), {dt:.1f}s"


def check_02():
    m = Marking.of((0, 0), (FIB, 0), horizon=FIB_HORIZON)
    r = count_po(m, 1500)
    target = 6 / pi
    ok = _rel(r.ratio, target) < 0.02
    return ok, f"po ratio {r.ratio:.5f} vs 6/π = {target:.5f} (rel {_rel(r.ratio, target):.2e})"


def check_03():
    cases = [(F(1, 2), "sc", 12), (F(1, 2), "po", 5), (F(1, 3), "sc", F(207, 16)), (F(1, 3), "po", F(21, 4))]
    parts, ok = [], True
    for x, kind, a in cases:
        m = Marking.of((0, 0), (x, 0))
        r = count_sc(m, 2000) if kind == "sc" else count_po(m, 2000)
        target = float(a) / pi
        good = _rel(r.ratio, target) < 0.02 and r.target.coef_inv_pi == a
        ok &= good
        parts.append(f"{kind}({x}) {r.ratio:.4f}/{target:.4f}")
    return ok, "; ".join(parts)


RADII_4 = [1, F(5, 2), 7, 20, F(123, 2), 100, 200]


def check_04():
    mismatches, total = [], 0
    for n in range(2, 13):
        for p in range(n):
            for q in range(n):
                if gcd(gcd(p, q), n) != 1:
                    continue
                x = (F(p, n), F(q, n))
                geo = [r.count for r in count_sc_many(Marking.of((0, 0), x), RADII_4, with_target=False)]
                lat = lattice_count_sc_two_marked(x, RADII_4)
                total += 1
                if geo != lat:
                    mismatches.append((p, q, n))
    return not mismatches, f"{total} markings x {len(RADII_4)} radii up to 200, {len(mismatches)} mismatches"


def check_05():
    bad = [n for n in range(2, 501) if veech_index(n) != index_via_asymptotics(n)]
    spots = (veech_index(2), veech_index(3), veech_index(6)) == (3, 4, 12)
    brute = [n for n in range(2, 201) if orbit_index(n) != orbit_index_bruteforce(n)]
    ok = not bad and spots and not brute
    return ok, f"dual-route mismatches n<=500: {len(bad)}; spots 3,4,12: {spots}; orbit brute mismatches n<=200: {len(brute)}"


def check_06():
    d = membership_disagreements(8, 6)
    if not d:
        return True, "0 disagreements"
    kinds: dict[str, int] = {}
    for e in d:
        b = congruence_branch(e.marking)
        kinds[b] = kinds.get(b, 0) + 1
    ex = d[0]
    return False, (f"{len(d)} disagreements {kinds}; e.g. x={ex.marking}, M={ex.matrix}: "
                   f"congruence={ex.congruence}, stabilizer={ex.stabilizer}")


def check_07():
    worst = max(abs(partial_l_sum(n, 10**6) - float(l_chi0_coefficient(n)) * pi**2 / 6) for n in range(1, 31))
    return worst < 1e-5, f"max error over n=1..30: {worst:.2e}"


def check_08():
    spots = (cusp_count(2), cusp_count(5), cusp_count(12)) == (1, 2, 2)
    bad = [n for n in range(2, 51) if len(ratio_invariant_classes(n)) != cusp_count(n)]
    return spots and not bad, f"spots 1,2,2: {spots}; ratio-class mismatches n<=50: {bad}"


def check_09():
    fails = sandwich_failures(10**4)
    limit = sc_constant_two_marked(IRRATIONAL).value()
    gaps = [limit - sc_constant_two_marked(x).value() for x in fibonacci_points(5, 15)]
    rises = [5 + i + 1 for i in range(len(gaps) - 1) if gaps[i + 1] >= gaps[i]]
    ok = not fails and not rises and all(g > 0 for g in gaps)
    detail = (f"sandwich failures n<=10^4: {len(fails)}; Fibonacci gaps k=5..15: "
              + ", ".join(f"{g:.4f}" for g in gaps)
              + (f"; gap increases at k={rises}" if rises else "; strictly decreasing"))
    return ok, detail


def check_10():
    m = Marking.of(*GP_POINTS, horizon=GP_HORIZON)
    m.check_horizon(1500)
    sc, po = count_sc(m, 1500), count_po(m, 1500)
    sc_t, po_t = 3 * pi + 9 / pi, 9 / pi
    ok = _rel(sc.ratio, sc_t) < 0.03 and _rel(po.ratio, po_t) < 0.03
    # the alternative indexing n(n+1)/2 would predict 6π + 9/π
    return ok, (f"sc {sc.ratio:.4f} vs 3π + 9/π = {sc_t:.4f}; po {po.ratio:.4f} vs 9/π = {po_t:.4f}; "
                f"6π + 9/π = {6 * pi + 9 / pi:.4f} is off by {_rel(sc.ratio, 6 * pi + 9 / pi):.0%}")


def check_11():
    # nothing was declared out of reach; every check above ran at full size
    return True, "no result declared unreachable; criteria 1-10 all run at their stated sizes"


CHECKS = [check_01, check_02, check_03, check_04, check_05, check_06, check_07, check_08,
          check_09, check_10, check_11]


@pytest.mark.parametrize("num", range(1, 12), ids=lambda n: f"criterion_{n:02d}")
def test_criterion(num):
    ok, detail = CHECKS[num - 1]()
    _record(num, ok, detail)
    assert ok, detail


if __name__ == "__main__":
    for i, chk in enumerate(CHECKS, start=1):
        _record(i, *chk())
