"""
Superradiance in an open many-body fermion system.

Non-Hermitian shell-model Hamiltonians ``H - (i/2) gamma n_nu``, their
complex spectra tracked over the decay width, effective occupation
numbers, the width segregation fraction, and the exactly solvable
two-spin model used as an oracle.
"""

__version__ = "0.1.0"

from .eig import Spectrum, defectiveness, eig  # noqa: E402
from .fock import (  # noqa: E402
    FockBasis,
    SlaterDeterminant,
    annihilate,
    count_doorway,
    create,
    enumerate_basis,
    occupancy,
)
from .hamiltonian import (  # noqa: E402
    EffectiveHamiltonian,
    ModelSpec,
    TwoBodyInteraction,
    assemble,
    build,
    sample_interaction,
    w_matrix,
)
from .observables import (  # noqa: E402
    occupations_fd,
    occupations_hf,
    occupations_hf_sweep,
    segregation_curve,
    segregation_fraction,
    spectroscopic_factors,
)
from .sweep import GammaGrid, TrajectorySet, match_states, sweep  # noqa: E402
from .two_spin import (  # noqa: E402
    TwoSpinParams,
    critical_gamma,
    eigenvalues_closed_form,
    full_hamiltonian,
    occupations_closed_form,
    sz0_block,
)
