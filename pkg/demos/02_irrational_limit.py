# # Rational points approaching an irrational one
#
# The growth constant of the torus marked at 0 and x jumps when x is rational:
# it is strictly smaller than at irrational x. Along a sequence of rationals
# tending to an irrational point it still converges.

from fractions import Fraction as F
from math import pi

from markedtori import IRRATIONAL, Marking, count_sc, sc_constant_two_marked
from markedtori.constants import fibonacci_points, sandwich_bounds

limit = sc_constant_two_marked(IRRATIONAL)
print("irrational limit:", limit)

# ## Ratios of Fibonacci numbers
#
# F_k / F_(k+1) tends to the golden-ratio conjugate. The gap closes roughly
# like 1/F_(k+1), but it is not monotone: it depends on the prime factors of
# the denominator.

for x in fibonacci_points(5, 15):
    c = sc_constant_two_marked(x)
    print(f"{str(x.x):>10}  {c.value():.6f}  gap {limit.value() - c.value():.4f}")

# The two-sided estimate behind the convergence, checked exactly with rational
# brackets around pi:

for n in (2, 10, 233, 9973):
    lo, mid, hi = sandwich_bounds(n)
    print(n, float(lo), float(mid), float(hi), lo < mid < hi)

# ## Emulating an irrational point
#
# 10946/17711 is rational, but its denominator is far beyond what a disk of
# radius 300 can resolve. Declaring a horizon below 17711 tells the library
# to treat it as irrational.

m = Marking.of((0, 0), (F(10946, 17711), 0), horizon=12001)
m.check_horizon(300)
r = count_sc(m, 300)
print(r.count, r.ratio, "vs", 6 / pi + pi)
