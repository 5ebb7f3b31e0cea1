"""
Effective occupation numbers
============================

``n(j; gamma) = dGamma_j/dgamma`` computed two ways: as a biorthogonal
expectation value of the decaying-orbital occupancy, and by finite
differences of the tracked widths.
"""

# %%
import numpy as np

from superradiance import GammaGrid, ModelSpec, sample_interaction, sweep
from superradiance.observables import fd_truncation_bound, occupations_fd, occupations_hf_sweep
from superradiance.plotting import plot_occupations

spec = ModelSpec(4, 8, delta_eps=0.5, seed=0)
traj = sweep(spec, sample_interaction(spec), GammaGrid.default())
hf = occupations_hf_sweep(traj)
fd = occupations_fd(traj)

# %%
# The occupations of all states add up to the number of doorway
# determinants at every ``gamma``.
print("max |sum n - 35| =", np.abs(hf.totals - 35).max())

# %%
# The two methods agree within the finite-difference truncation estimate.
bound = np.maximum(1e-3, fd_truncation_bound(traj.gamma, hf.values, safety=3.0))
print("max |FD - HF| / bound =", (np.abs(fd.values - hf.values) / bound).max())

# %%
plot_occupations(hf, "occupations.svg")
