# # Counting saddle connections on a marked torus
#
# A flat torus R^2/Z^2 with a few marked points. A saddle connection is a
# straight segment from one marked point to another (or back to itself) with
# no marked point in its interior. We count them inside a disk of radius T.

from fractions import Fraction as F

from markedtori import Marking, count_po, count_sc, enumerate_cylinders, enumerate_saddle_connections
from markedtori.counting import reference_saddle_connections

# ## One marked point
#
# With a single point every saddle connection is a loop, and a loop is just a
# primitive integer vector. Up to sign there are four of length at most 3/2.

one = Marking.of((0, 0))
for s in enumerate_saddle_connections(one, F(3, 2)):
    print(s.from_index, "->", s.to_index, s.vector)

# ## Adding the midpoint (1/2, 0)
#
# The horizontal loop of length 1 now passes through the new point, so it
# breaks into two half-length connections.

half = Marking.of((0, 0), (F(1, 2), 0))
for s in enumerate_saddle_connections(half, 1):
    print(s.from_index, "->", s.to_index, s.vector)

# The fast scan and the slow exact-rational oracle agree:

print(len(enumerate_saddle_connections(half, 6)), len(reference_saddle_connections(half, 6)))

# ## Cylinders
#
# In each rational direction the torus splits into parallel cylinders; a
# marked point on a new leaf adds one.

for fam in enumerate_cylinders(half, 1):
    print(fam)

# ## Quadratic growth
#
# Counts grow like c * T^2. The report carries the exact closed form when the
# marking is in a regime that has one.

for T in (50, 200, 800):
    r = count_sc(half, T)
    p = count_po(half, T)
    print(f"T={T:4d}  sc {r.count:8d} ratio {r.ratio:.5f} target {r.target}")
    print(f"        po {p.count:8d} ratio {p.ratio:.5f} target {p.target}")
