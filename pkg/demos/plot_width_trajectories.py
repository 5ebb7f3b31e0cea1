"""
Complex-energy trajectories of 70 many-body states
===================================================

Four fermions in eight equidistant orbitals with a random two-body
interaction; the top orbital decays.  As ``gamma`` grows, 35 states
acquire nearly all of the summed width while 35 become trapped.
"""

# %%
import numpy as np

from superradiance import GammaGrid, ModelSpec, sample_interaction, spectroscopic_factors, sweep
from superradiance.plotting import plot_trajectories

spec = ModelSpec(n_particles=4, n_orbitals=8, delta_eps=0.5, v_scale=1.0, seed=0)
traj = sweep(spec, sample_interaction(spec), GammaGrid.default())
print(traj.n_states, "states tracked over", len(traj.gamma), "gamma values")

# %%
# Width sum rule: the total width is ``gamma`` times the number of
# determinants containing the decaying orbital.
g = traj.gamma[1:]
print("max relative sum-rule residual:",
      np.max(np.abs(traj.widths[1:].sum(axis=1) - 35 * g) / (35 * g)))

# %%
# Segregation at the largest coupling
sf = spectroscopic_factors(traj.spectra[-1], traj.gamma[-1])
print("Gamma/gamma > 0.9:", np.count_nonzero(sf > 0.9), " < 0.1:", np.count_nonzero(sf < 0.1))

# %%
plot_trajectories(traj, "trajectories.svg")
