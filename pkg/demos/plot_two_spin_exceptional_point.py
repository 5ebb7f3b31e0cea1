"""
Two spins, one decaying: level attraction and width repulsion
==============================================================

Two spin-1/2 particles coupled by ``alpha s1.s2`` where only the first
spin-up state decays with width ``gamma``.  In the ``S^z = 0`` sector the
effective Hamiltonian is a 2x2 block whose eigenvalues coalesce at the
exceptional point ``gamma_c = 2|alpha|``.
"""

# %%
# Closed form against the numerical eigensolver
# ----------------------------------------------
import numpy as np

from superradiance import TwoSpinParams, critical_gamma, eig, eigenvalues_closed_form, sz0_block
from superradiance.two_spin import occupations_closed_form

alpha = 1.0
gammas = np.linspace(0.0, 6.0, 61)
closed = np.array([eigenvalues_closed_form(TwoSpinParams(alpha, 0.0, g)) for g in gammas])
numeric = np.array([np.sort_complex(eig(sz0_block(TwoSpinParams(alpha, 0.0, g))).eigenvalues)
                    for g in gammas])
dev = np.minimum(np.abs(numeric - closed).max(axis=1), np.abs(numeric - closed[:, ::-1]).max(axis=1))
print(f"gamma_c = {critical_gamma(alpha)}, max deviation = {dev.max():.2e}")

# %%
# Below ``gamma_c`` both states share the width equally and their energies
# attract; above it the energies lock at ``-alpha/4`` and the widths repel.
for g in (1.0, 2.0, 4.0, 10.0):
    ep, em = eigenvalues_closed_form(TwoSpinParams(alpha, 0.0, g))
    print(f"gamma={g:5.1f}  E+={ep.real:+.4f} Gamma+={-2 * ep.imag:.4f}  "
          f"E-={em.real:+.4f} Gamma-={-2 * em.imag:.4f}")

# %%
# Effective occupations ``dGamma/dgamma`` leave the interval [0, 1] just
# above the exceptional point and approach 1 and 0 as ``gamma`` grows.
for g in (1.0, 2.5, 4.0, 100.0):
    print(g, occupations_closed_form(TwoSpinParams(alpha, 0.0, g)))

# %%
# Plot the trajectories in the complex plane
import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

fig, ax = plt.subplots(figsize=(5, 4))
ax.plot(closed[:, 0].real, -2 * closed[:, 0].imag, label="E+")
ax.plot(closed[:, 1].real, -2 * closed[:, 1].imag, label="E-")
ax.set_xlabel("E")
ax.set_ylabel("Gamma")
ax.invert_yaxis()
ax.legend()
fig.savefig("two_spin.svg")
