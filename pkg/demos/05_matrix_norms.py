"""
Norms of the correlation matrix
===============================

At each (tau, nu) the cross ambiguities form an M x M matrix R. Its
Frobenius norm integrates to the same total as the MIMO energy; the induced
1- and inf-norms are bounded pointwise by sums of signal norms.
"""

from ambkit import SuiteConfig, correlation_matrix_field, default_grid, matrix_norm_field, run_mimo_suite
from ambkit.signal import default_lattice, random_smooth_set

lat = default_lattice()
grid = default_grid()
sigs = random_smooth_set(3, lat, seed=11)
field = correlation_matrix_field(sigs, grid)

for kind in ("frobenius", "induced1", "inducedInf"):
    nf = matrix_norm_field(field, kind)
    print(f"{kind:<11} max {nf.peak:.6f}")

cfg = SuiteConfig(grid=grid, relations=("P4.1", "P4.2", "P4.3", "P4.5", "P4.x-1norm"))
for r in run_mimo_suite(sigs, cfg, field):
    print(r)
