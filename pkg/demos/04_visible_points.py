# # Visible points and the lattice behind the counts
#
# Saddle connections from 0 to x correspond to visible points of x + Z^2.
# For rational x the relevant object is G_{I^n}, a union of shifted copies
# of nZ^2.

from math import pi

import numpy as np

from markedtori.lattice import (VisibilityConvention, build_G_In, count_points, count_visible,
                                integer_lattice, multiplicity_coefficient, visible_density_G_In,
                                visible_points)

Zs = integer_lattice(punctured=True)
print(sorted(visible_points(Zs, 2)))
print(len(visible_points(Zs, 2, VisibilityConvention.DIRECTED)))

# ## Density of visible points of G_{I^n}

T = 1500
for n in (2, 3, 4, 6, 10):
    G = build_G_In(n)
    vis = count_visible(G, T)
    print(f"n={n:2d}  empirical {vis / T**2:.5f}  exact {visible_density_G_In(n)}")

# ## Every point is a multiple of a visible one
#
# The ratio of all points to visible points tends to c(n) * pi^2.

for n in (2, 5):
    G = build_G_In(n)
    ratio = count_points(G, T) / count_visible(G, T)
    print(n, ratio, float(multiplicity_coefficient(n)) * pi**2)

# Directions of the first few visible points, as angles:

vis = sorted(visible_points(build_G_In(5), 12), key=lambda v: (v.y, v.x))
angles = np.degrees(np.arctan2([float(v.y) for v in vis], [float(v.x) for v in vis]))
print(np.round(angles, 1))
