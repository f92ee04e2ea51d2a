"""
MIMO ambiguity and its energy
=============================

Stacking M waveforms gives a matrix of cross ambiguities. Steering them with
spatial frequencies (fs, fs') gives the MIMO ambiguity; averaged over the
spatial frequencies its energy is (sum of signal energies)^2, whatever the
cross terms look like.
"""

from ambkit import SteeringSpec, correlation_matrix_field, default_grid, gen_waveform, mimo_ambiguity, mimo_l2_energy
from ambkit.signal import default_lattice

lat = default_lattice()
grid = default_grid()
sigs = gen_waveform("lfm_chirp", {"rates": [0.5, -0.5, 1.5], "alpha": 1.0}, lat)
field = correlation_matrix_field(sigs, grid)
print("entry peaks:\n", field.entry_peaks().round(4))

energies = sigs.norms(2) ** 2
for gamma in (1, 2, 3):
    st = SteeringSpec(gamma)
    e = mimo_l2_energy(field, st)
    print(f"gamma={gamma} k_s={st.nodes(3)}: energy {e:.9f}, (sum ||u||^2)^2 = {energies.sum() ** 2:.9f}")

# %%
# A single slice. Broadside (0, 0) adds every entry coherently.
for fs, fsp in ((0, 0), (0.5, 0), (1 / 3, 2 / 3)):
    print(f"fs={fs:.3f} fs'={fsp:.3f}: peak |A| = {mimo_ambiguity(field, SteeringSpec(1), fs, fsp).peak:.5f}")
