"""
How small can the ambiguity support be?
=======================================

The local uncertainty relation caps the energy in any region E by |E| times
the squared peak. Read backwards, it forces the eps-support of the surface to
be at least (energy above eps) / (total energy). We sweep eps for a Gaussian
and then look at the MIMO version on two identical Gaussians, where the
corrected constant M^2 of the shrinking-disk relation shows up.
"""

import math

from ambkit import Region, SuiteConfig, default_grid, epsilon_support, run_mimo_suite, symmetric_ambiguity
from ambkit.signal import SignalSet, default_lattice, unit_gaussian
from ambkit.uncertainty import support_lower_bound

grid = default_grid()
g = unit_gaussian(default_lattice())
amb = symmetric_ambiguity(g, g, grid)

print("eps       area      bound")
for eps in (0.05, 0.1, math.exp(-math.pi / 2), 0.4, 0.8):
    mask = amb.magnitude > eps
    num = float((amb.magnitude[mask] ** 2).sum() * grid.cell_area)
    print(f"{eps:.5f}   {epsilon_support(amb, eps):.5f}   {support_lower_bound(num, 1.0):.5f}")

# %%
# Two identical unit Gaussians, disks shrinking around the origin. The ratio
# local energy / (|E| ||u||^4) climbs toward M^2 = 4, well past M = 2.
regions = tuple(Region.disk(0, 0, r) for r in (1, 0.5, 0.25, 0.125))
res = run_mimo_suite(SignalSet((g, g)), SuiteConfig(grid=grid, regions=regions, relations=("R3.4",)))
for r in res:
    print(f"{r.context['region']:<22} ratio {r.context['ratio']:.4f}")
