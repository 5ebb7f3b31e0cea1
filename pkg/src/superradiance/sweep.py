"""
Sweep the decay width and follow individual states through the complex plane.

The Hermitian part is built once; at each grid point only the imaginary
diagonal ``-(i/2) gamma n_nu`` changes.  Eigenpairs at consecutive grid
points are linked by the overlap of their unit-norm right eigenvectors.
"""

from __future__ import annotations

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import List, NamedTuple, Optional

import numpy as np
from scipy.optimize import linear_sum_assignment

from .eig import Spectrum, eig
from .errors import AmbiguousTrackingError
from .hamiltonian import EffectiveHamiltonian, ModelSpec, TwoBodyInteraction, assemble
from .fock import enumerate_basis

__all__ = [
    "MIN_OVERLAP",
    "GammaGrid",
    "Assignment",
    "TrajectorySet",
    "match_states",
    "sweep",
    "sweep_matrices",
]

log = logging.getLogger(__name__)

MIN_OVERLAP = 0.5


@dataclass(frozen=True)
class GammaGrid:
    values: np.ndarray
    scale: str = "log"

    def __post_init__(self):
        v = np.asarray(self.values, dtype=float).ravel()
        if v.size == 0:
            raise ValueError("gamma grid is empty")
        if not np.all(np.isfinite(v)) or np.any(v < 0):
            raise ValueError("gamma grid values must be finite and >= 0")
        if np.any(np.diff(v) <= 0):
            raise ValueError("gamma grid must be strictly increasing")
        if self.scale not in ("log", "linear"):
            raise ValueError(f"unknown grid scale {self.scale!r}")
        v.setflags(write=False)
        object.__setattr__(self, "values", v)

    @classmethod
    def log(cls, gamma_min=1e-2, gamma_max=1e2, points=200, include_zero=True):
        v = np.logspace(np.log10(gamma_min), np.log10(gamma_max), points)
        if include_zero:
            v = np.concatenate([[0.0], v])
        return cls(v, "log")

    @classmethod
    def linear(cls, gamma_min, gamma_max, points):
        return cls(np.linspace(gamma_min, gamma_max, points), "linear")

    @classmethod
    def default(cls):
        return cls.log()

    def __len__(self):
        return len(self.values)


class Assignment(NamedTuple):
    """``permutation[j]`` is the index in the next spectrum taken by state ``j``."""

    permutation: np.ndarray
    overlaps: np.ndarray
    method: str


def _overlap_matrix(prev: Spectrum, nxt: Spectrum) -> np.ndarray:
    return np.abs(prev.right_vectors.conj().T @ nxt.right_vectors)


def match_states(prev: Spectrum, nxt: Spectrum) -> Assignment:
    """Link each state of ``prev`` to one state of ``nxt``.

    Greedy assignment in order of decreasing overlap; if that leaves any
    link below ``MIN_OVERLAP`` the optimal assignment maximizing the total
    squared overlap is used instead.
    """
    if len(prev) != len(nxt):
        raise ValueError("spectra have different dimensions")
    ov = _overlap_matrix(prev, nxt)
    n = len(ov)
    perm = np.full(n, -1)
    taken = np.zeros(n, dtype=bool)
    # stable sort keeps ties deterministic
    for flat in np.argsort(-ov, axis=None, kind="stable"):
        i, k = divmod(int(flat), n)
        if perm[i] < 0 and not taken[k]:
            perm[i] = k
            taken[k] = True
    got = ov[np.arange(n), perm]
    if got.min() >= MIN_OVERLAP:
        return Assignment(perm, got, "greedy")
    rows, cols = linear_sum_assignment(ov**2, maximize=True)
    perm = cols[np.argsort(rows)]
    return Assignment(perm, ov[np.arange(n), perm], "optimal")


@dataclass(frozen=True)
class TrajectorySet:
    """Tracked complex energies over a gamma grid.

    Attributes
    ----------
    grid : GammaGrid
    spectra : list of Spectrum
        Raw (sorted) spectrum at each grid point.
    index : ndarray, shape (points, states)
        ``index[k, j]``: position of tracked state ``j`` in ``spectra[k]``.
    confidence : ndarray, shape (points, states)
        Overlap linking state ``j`` from point ``k-1`` to ``k`` (1 at ``k=0``).
    ambiguous : list of (gamma_lo, gamma_hi)
        Segments where some link fell below ``MIN_OVERLAP``.
    """

    grid: GammaGrid
    spectra: List[Spectrum]
    index: np.ndarray
    confidence: np.ndarray
    ambiguous: list = field(default_factory=list)
    spec: Optional[ModelSpec] = None
    hamiltonian: Optional[EffectiveHamiltonian] = None

    @property
    def gamma(self) -> np.ndarray:
        return self.grid.values

    @property
    def n_states(self) -> int:
        return self.index.shape[1]

    @property
    def eigenvalues(self) -> np.ndarray:
        """Tracked complex energies, shape (points, states)."""
        return np.array([s.eigenvalues[ix] for s, ix in zip(self.spectra, self.index)])

    @property
    def energies(self) -> np.ndarray:
        return self.eigenvalues.real

    @property
    def widths(self) -> np.ndarray:
        return -2.0 * self.eigenvalues.imag

    def right_vector(self, k: int, j: int) -> np.ndarray:
        return self.spectra[k].right_vectors[:, self.index[k, j]]

    def flagged(self) -> np.ndarray:
        """Near-defective eigenpairs in tracked order, shape (points, states)."""
        return np.array([s.near_defective[ix] for s, ix in zip(self.spectra, self.index)])


def sweep_matrices(
    hermitian,
    doorway,
    grid: GammaGrid,
    *,
    strict: bool = False,
    max_workers: Optional[int] = None,
    spec: Optional[ModelSpec] = None,
    hamiltonian: Optional[EffectiveHamiltonian] = None,
) -> TrajectorySet:
    """Track eigenstates of ``hermitian - (i/2) gamma diag(doorway)``.

    With ``strict=True`` an ambiguous link raises
    :class:`AmbiguousTrackingError`; otherwise it is recorded and the sweep
    continues.
    """
    h = np.asarray(hermitian, dtype=complex)
    door = np.asarray(doorway, dtype=float)
    diag = np.diag_indices_from(h)

    def spectrum_at(g):
        m = h.copy()
        m[diag] -= 0.5j * g * door
        return eig(m)

    if max_workers and max_workers > 1:
        with ThreadPoolExecutor(max_workers) as pool:
            spectra = list(pool.map(spectrum_at, grid.values))
    else:
        spectra = [spectrum_at(g) for g in grid.values]

    n = len(h)
    index = np.empty((len(grid), n), dtype=int)
    confidence = np.ones((len(grid), n))
    index[0] = np.arange(n)
    ambiguous = []
    for k in range(1, len(grid)):
        a = match_states(spectra[k - 1], spectra[k])
        # a.permutation is in terms of sorted positions at k-1
        index[k] = a.permutation[index[k - 1]]
        confidence[k] = a.overlaps[index[k - 1]]
        if a.overlaps.min() < MIN_OVERLAP:
            interval = (float(grid.values[k - 1]), float(grid.values[k]))
            if strict:
                raise AmbiguousTrackingError(
                    f"best assignment overlap {a.overlaps.min():.3g} < {MIN_OVERLAP} "
                    f"between gamma={interval[0]:.6g} and {interval[1]:.6g}",
                    interval,
                )
            log.warning("ambiguous tracking on gamma interval %s", interval)
            ambiguous.append(interval)
    index.setflags(write=False)
    confidence.setflags(write=False)
    return TrajectorySet(grid, spectra, index, confidence, ambiguous, spec, hamiltonian)


def sweep(
    spec: ModelSpec,
    v: TwoBodyInteraction,
    grid: GammaGrid,
    *,
    strict: bool = False,
    max_workers: Optional[int] = None,
) -> TrajectorySet:
    """Assemble the model once and track all many-body states over ``grid``."""
    ham = assemble(spec, v, enumerate_basis(spec.n_particles, spec.n_orbitals))
    return sweep_matrices(
        ham.hermitian,
        ham.doorway,
        grid,
        strict=strict,
        max_workers=max_workers,
        spec=spec,
        hamiltonian=ham,
    )
