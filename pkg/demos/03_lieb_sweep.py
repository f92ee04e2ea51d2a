"""
Lieb's p-sweep
==============

For unit signals the p-th power integral of |A| is bounded by 2/p: from
above when p > 2 and from below when p < 2. Matched Gaussians sit on the
bound for every p. Random smooth pairs fall strictly inside.
"""

import math

from ambkit import check_lieb, default_grid, gen_waveform, symmetric_ambiguity
from ambkit.signal import default_lattice, random_smooth_set

lat = default_lattice()
grid = default_grid()
pair = gen_waveform("matched_gaussian_pair", {"alpha": math.pi, "betas": [0, 0.5j], "normalize": True}, lat)
amb = symmetric_ambiguity(pair[0], pair[1], grid)

print(" p   sense  lhs        2/p")
for p in (1, 1.5, 2, 3, 4, 6):
    r = check_lieb(pair[0], pair[1], p, amb)
    print(f"{p:<4}{r.sense:<7}{r.lhs:.7f}  {r.rhs:.7f}")

# %%
# A random unit pair: the bound holds with room to spare.
u, v = random_smooth_set(2, lat, seed=3, normalize=True)
a = symmetric_ambiguity(u, v, grid)
for p in (1.5, 4):
    print(check_lieb(u, v, p, a))
