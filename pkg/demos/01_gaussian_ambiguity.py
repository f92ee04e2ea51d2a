"""
The Gaussian ambiguity surface
==============================

A unit-energy Gaussian is the textbook case: its symmetric ambiguity is
real and equals exp(-pi (tau^2 + nu^2) / 2). We compute it on the default
513 x 513 grid and compare against that closed form, then check a corner
of the grid against the brute-force oracle.
"""

import math
import time

import numpy as np

from ambkit import GridSpec, default_grid, symmetric_ambiguity, unit_gaussian
from ambkit.ambiguity import direct_grid

g = unit_gaussian()
grid = default_grid()
print(f"lattice: t0={g.t0}, dt={g.dt}, N={g.n}; grid {grid.shape} over [{grid.taus[0]}, {grid.taus[-1]}]^2")

t = time.perf_counter()
amb = symmetric_ambiguity(g, g, grid)
print(f"FFT path took {time.perf_counter() - t:.3f} s")

tau, nu = grid.mesh()
closed = np.exp(-math.pi * (tau**2 + nu**2) / 2)
print("max |A - closed form| =", np.abs(amb.values - closed).max())
print("A(0, 0) =", amb.at(0, 0))

# %%
# The direct oracle evaluates the defining sum term by term. It is slow, so
# we only ask it for a 5 x 5 patch near the origin.
patch = GridSpec(-0.25, 1 / 16, 5, -0.5, 0.25, 5)
fast = symmetric_ambiguity(g, g, patch).values
slow = direct_grid(g, g, patch).values
print("FFT vs oracle on the patch:", np.abs(fast - slow).max())
