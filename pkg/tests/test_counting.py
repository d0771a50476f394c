import random
from fractions import Fraction as F
from math import gcd

import pytest
from hypothesis import given, strategies as st

from markedtori.counting import (Marking, MarkingsFormatError, count_nonrational_parallel, count_po,
                                 count_po_many, count_sc, count_sc_many, decompose_classes,
                                 enumerate_cylinders, enumerate_saddle_connections,
                                 lattice_count_po_two_marked, lattice_count_sc_two_marked,
                                 parse_markings, rational_division_events,
                                 reference_saddle_connections)
from markedtori.exactgeom import PlanarVector, TorusPoint, squared_norm, wrap_to_torus

FIB = F(10946, 17711)


def vectors(scs):
    return sorted((s.from_index, s.to_index, s.vector.as_tuple()) for s in scs)


def test_single_point_loops():
    scs = enumerate_saddle_connections(Marking.of((0, 0)), F(3, 2))
    assert {s.vector for s in scs} == {PlanarVector(*v) for v in [(1, 0), (0, 1), (1, 1), (1, -1)]}


def test_half_marking_at_radius_one():
    m = Marking.of((0, 0), (F(1, 2), 0))
    got = vectors(enumerate_saddle_connections(m, 1))
    assert got == [(0, 0, (0, 1)), (0, 1, (F(-1, 2), 0)), (0, 1, (F(1, 2), 0)), (1, 1, (0, 1))]


def test_short_radius_empty():
    assert enumerate_saddle_connections(Marking.of((0, 0)), F(1, 2)) == []


def test_count_sc_examples():
    assert count_sc(Marking.of((0, 0), (F(1, 2), 0)), 1).count == 4
    assert count_sc(Marking.of((0, 0)), F(3, 2)).count == 4


def test_cylinder_examples():
    m = Marking.of((0, 0), (F(1, 2), 0))
    fams = enumerate_cylinders(m, 1)
    assert [(f.direction, f.leaf_count) for f in fams] == [((1, 0), 1), ((0, 1), 2)]
    assert count_po(m, 1).count == 3
    assert count_po(Marking.of((0, 0)), 1).count == 2


def test_coincident_points_rejected():
    with pytest.raises(ValueError):
        Marking.of((0, 0), (1, 1))


def test_connections_are_valid_segments():
    m = Marking.of((0, 0), (F(1, 3), F(1, 2)), (F(2, 5), 0))
    for s in enumerate_saddle_connections(m, 5):
        assert not s.vector.is_zero()
        assert wrap_to_torus(m.points[s.from_index].coords + s.vector) == m.points[s.to_index]
        if s.from_index == s.to_index:
            # loops live on the integer lattice and must be primitive
            assert s.vector.x.denominator == 1 and s.vector.y.denominator == 1
            assert gcd(int(s.vector.x), int(s.vector.y)) == 1


def _random_marking(rng, k, dens=(2, 3, 4, 5, 6, 7, 9)):
    pts = set()
    while len(pts) < k:
        n = rng.choice(dens)
        pts.add((F(rng.randrange(n), n), F(rng.randrange(n), n)))
    return Marking.of(*sorted(pts))


def test_fast_scan_equals_reference_oracle():
    rng = random.Random(7)
    for _ in range(25):
        m = _random_marking(rng, rng.choice([1, 2, 3, 4]))
        T = F(rng.randrange(2, 13), 2)
        assert vectors(enumerate_saddle_connections(m, T)) == vectors(reference_saddle_connections(m, T))


def test_oracle_agrees_with_lattice_route_small():
    for n in range(2, 8):
        for p in range(n):
            for q in range(n):
                if gcd(gcd(p, q), n) != 1:
                    continue
                x = (F(p, n), F(q, n))
                m = Marking.of((0, 0), x)
                assert len(reference_saddle_connections(m, 3)) == lattice_count_sc_two_marked(x, [3])[0]


def test_po_lattice_route():
    for x in [(F(1, 2), 0), (F(1, 3), F(2, 3)), (F(2, 5), F(1, 5))]:
        radii = [1, 7, 30, 80]
        assert [r.count for r in count_po_many(Marking.of((0, 0), x), radii)] == \
            lattice_count_po_two_marked(x, radii)


@given(st.integers(0, 5), st.integers(1, 6), st.integers(0, 5), st.integers(1, 6),
       st.fractions(min_value=-3, max_value=3, max_denominator=7),
       st.fractions(min_value=-3, max_value=3, max_denominator=7))
def test_translation_invariance(a, b, c, d, tx, ty):
    if (F(a % b, b), F(c % d, d)) == (0, 0):
        return
    m = Marking.of((0, 0), (F(a, b), F(c, d)))
    mt = m.translated(PlanarVector(tx, ty))
    assert count_sc(m, 9, with_target=False).count == count_sc(mt, 9, with_target=False).count
    assert count_po(m, 9, with_target=False).count == count_po(mt, 9, with_target=False).count


def test_counts_monotone_in_radius():
    m = Marking.of((0, 0), (F(1, 3), F(1, 4)), (F(1, 2), F(1, 2)))
    radii = [F(k, 3) for k in range(0, 60)]
    sc = [r.count for r in count_sc_many(m, radii, with_target=False)]
    po = [r.count for r in count_po_many(m, radii, with_target=False)]
    assert sc == sorted(sc) and po == sorted(po)


def test_multi_radius_matches_single_radius():
    m = Marking.of((0, 0), (F(2, 7), F(3, 7)))
    radii = [3, F(7, 2), 10]
    assert [r.count for r in count_sc_many(m, radii)] == [count_sc(m, r).count for r in radii]


def test_po_removal_monotone():
    m = Marking.of((0, 0), (F(1, 3), F(1, 4)), (F(1, 2), F(1, 2)), (F(4, 5), F(1, 7)))
    full = count_po(m, 25, with_target=False).count
    for k in range(len(m)):
        assert count_po(m.without(k), 25, with_target=False).count <= full


def test_threads_do_not_change_counts():
    m = Marking.of((0, 0), (F(1, 5), F(2, 5)), (F(1, 2), 0))
    a = count_sc(m, 150, workers=1, with_target=False)
    b = count_sc(m, 150, workers=4, with_target=False)
    assert a.count == b.count


def test_tie_radius_included():
    # (3, 4), (4, 3), (3, -4), (4, -3) have length exactly 5
    base = count_sc(Marking.of((0, 0)), F(49999, 10000), with_target=False).count
    assert count_sc(Marking.of((0, 0)), 5, with_target=False).count == base + 4


def test_decompose_examples():
    assert decompose_classes(Marking.of((0, 0), (F(1, 2), 0), (F(1, 2), F(1, 3)))) == [[0, 1, 2]]
    assert decompose_classes(Marking.of((0, 0), (FIB, 0), horizon=10**4)) == [[0], [1]]
    assert decompose_classes(Marking.of((0, 0))) == [[0]]


def test_horizon_check():
    m = Marking.of((0, 0), (FIB, 0), horizon=12001)
    m.check_horizon(1500)
    with pytest.raises(ValueError):
        m.check_horizon(1501)


def test_division_event_collinear_triple():
    m = Marking.of((0, 0), (F(1, 3), 0), (F(2, 3), 0))
    evs = [e for e in rational_division_events(m, 1) if e.k == 1]
    seg = [e for e in evs if e.pair == (0, 2)]
    assert any(e.ratio == F(1, 2) for e in seg)
    assert all(e.lattice_ok for e in rational_division_events(m, 6))


def test_division_event_between_classes():
    m = Marking.of((0, 0), (FIB, 0), (FIB / 2, 0), horizon=10**4)
    evs = rational_division_events(m, 2)
    hit = [e for e in evs if e.k == 2 and e.pair == (0, 1)]
    assert [e.ratio for e in hit] == [F(1, 2)]
    assert hit[0].unique_ratio_expected and hit[0].lattice_ok
    assert hit[0].witness.contains(PlanarVector(FIB, 0))


def test_division_ratio_unique_across_irrational_pairs():
    m = Marking.of((0, 0), (FIB, 0), (FIB / 2, 0), horizon=10**4)
    by_pair = {}
    for e in rational_division_events(m, 6):
        if e.unique_ratio_expected:
            by_pair.setdefault((e.k, e.pair), set()).add(e.ratio)
    assert by_pair and all(len(r) == 1 for r in by_pair.values())


def test_general_position_has_no_events():
    D = 18013
    m = Marking.of((0, 0), (F(5000, D), F(7001, D)), (F(11111, D), F(2345, D)), horizon=18001)
    assert rational_division_events(m, 30) == []


def test_nonrational_parallel_examples():
    assert count_nonrational_parallel(Marking.of((0, 0)), (0, 0), 50) == 0
    m = Marking.of((0, 0), (F(1, 3), 0), (F(2, 3), 0))
    assert count_nonrational_parallel(m, (0, 1), 30) == 0


def test_nonrational_parallel_grows_linearly():
    m = Marking.of((0, 0), (FIB, F(4181, 17711)), horizon=12001)
    per_T = [count_nonrational_parallel(m, (0, 1), T) / T for T in (50, 100, 200)]
    assert max(per_T) <= 2 * max(min(per_T), 1)


def test_parse_markings():
    m = parse_markings("# two points\n0 0\n\n1/2 0\n")
    assert m.points == (TorusPoint.of(0, 0), TorusPoint.of(F(1, 2), 0))
    with pytest.raises(MarkingsFormatError, match="line 2"):
        parse_markings("0 0\n1/2\n")
    with pytest.raises(MarkingsFormatError, match="line 1"):
        parse_markings("2/4 0\n")
    with pytest.raises(ValueError, match="no markings"):
        parse_markings("# nothing\n")
    with pytest.raises(MarkingsFormatError, match="line 2"):
        parse_markings("0 0\nx 1\n")


@pytest.mark.slow
@pytest.mark.parametrize("x, kind, value", [
    ((F(1, 2), 0), "sc", 12), ((F(1, 2), 0), "po", 5),
])
def test_rational_constants_at_2000(x, kind, value):
    from math import pi
    m = Marking.of((0, 0), x)
    r = count_sc(m, 2000) if kind == "sc" else count_po(m, 2000)
    assert abs(r.ratio / (value / pi) - 1) < 0.02
    assert r.target is not None and r.target.coef_inv_pi == value
