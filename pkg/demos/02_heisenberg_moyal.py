"""
Heisenberg and Moyal
====================

The Gaussian attains the time-frequency uncertainty bound with equality;
anything else leaves positive slack. Moyal's identity says the ambiguity
energy of any pair equals the product of the signal energies.
"""

from ambkit import check_heisenberg, default_grid, gen_waveform, grid_lp_integral, symmetric_ambiguity
from ambkit.rng import Lcg64
from ambkit.signal import default_lattice, energy, random_smooth_signal, unit_gaussian

lat = default_lattice()
g = unit_gaussian(lat)
print(check_heisenberg(g))

code = gen_waveform("phase_code", {"code": [1, -1, -1, 1], "chip": 0.75, "smooth": 0.1}, lat)[0]
print(check_heisenberg(code))

rng = Lcg64(1)
for _ in range(3):
    x = random_smooth_signal(lat, rng)
    r = check_heisenberg(x)
    print(f"random signal: lhs/rhs = {r.lhs / r.rhs:.4f}")

# %%
# Moyal: integral of |A(u, v)|^2 over the plane equals ||u||^2 ||v||^2.
grid = default_grid()
u = random_smooth_signal(lat, rng)
v = gen_waveform("hermite", {"orders": [3]}, lat)[0]
lhs = grid_lp_integral(symmetric_ambiguity(u, v, grid), 2)
print(f"Moyal: {lhs:.9f} vs {energy(u) * energy(v):.9f}")
