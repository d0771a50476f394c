# # Veech groups of the torus marked at 0 and a rational point
#
# A matrix in SL2(Z) belongs to the Veech group when it maps the second
# marked point to itself or to its negative, modulo Z^2.

from fractions import Fraction as F

from markedtori.veech import (IntegerMatrix2, RationalMarking2, coset_index, cusp_count,
                              index_via_asymptotics, membership_congruence, membership_stabilizer,
                              orbit_coset_index, reduce_to_canonical, veech_index)

x = RationalMarking2.of(F(1, 3), 0)
for M in (IntegerMatrix2(1, 0, 3, 1), IntegerMatrix2(0, -1, 1, 0), IntegerMatrix2(1, 1, 0, 1)):
    print(M, membership_stabilizer(x, M))

# ## Every rational point looks like (1/n, 0)
#
# Some A in SL2(Z) moves (p/n, q/n) to (1/n, 0), so all points with the same
# denominator have conjugate Veech groups.

A = reduce_to_canonical(3, 2, 7)
print(A, A.apply(F(3, 7), F(2, 7)))

# ## The index, three ways
#
# A closed formula, the cusp count divided by a visible-point density, and a
# plain breadth-first enumeration of cosets.

for n in range(2, 9):
    canon = RationalMarking2.of(F(1, n), 0)
    bfs = coset_index(lambda M: membership_stabilizer(canon, M))
    print(n, veech_index(n), index_via_asymptotics(n), orbit_coset_index(n), bfs, "cusps", cusp_count(n))

# ## Published congruence conditions vs the stabilizer
#
# For x = (1/2, 1/4) the matrix below sends x to -x, so it is in the group,
# but the divisibility-case conditions ask for c even.

x = RationalMarking2.of(F(1, 2), F(1, 4))
M = IntegerMatrix2(5, 4, 1, 1)
print(M.apply(*x.point), membership_stabilizer(x, M), membership_congruence(x, M))
