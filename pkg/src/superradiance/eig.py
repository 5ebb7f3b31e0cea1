"""
Dense non-Hermitian eigendecomposition with biorthonormal eigenvectors.

LAPACK ``zgeev`` (through :func:`scipy.linalg.eig`) performs the Hessenberg
reduction and shifted QR iterations and returns left and right vectors from
the same Schur form.  On top of that this module fixes the ordering,
normalization and the biorthonormal pairing, and reports the per-eigenvalue
condition numbers used to spot near-exceptional points.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List

import numpy as np
import scipy.linalg

from .errors import NoConvergenceError

__all__ = [
    "DEFECTIVE_KAPPA",
    "Spectrum",
    "Cluster",
    "eig",
    "defectiveness",
    "biorthonormality_defect",
    "residuals",
]

DEFECTIVE_KAPPA = 1e6
#: eigenvalues closer than this (relative to the matrix norm) are paired as a group
GAP_TOL = 1e-8


@dataclass(frozen=True)
class Spectrum:
    """Eigen-decomposition of a square matrix.

    Attributes
    ----------
    eigenvalues : ndarray, complex
        Sorted by real part, then imaginary part.
    right_vectors : ndarray
        Columns are unit-norm right eigenvectors.
    left_vectors : ndarray
        Columns ``L_j`` scaled so that ``L_i^H R_j = delta_ij``
        (except inside near-defective clusters).
    condition : ndarray
        ``kappa_j = 1 / |<l_j|r_j>|`` for unit-norm ``l_j, r_j``.
    norm : float
        Frobenius norm of the decomposed matrix.
    """

    eigenvalues: np.ndarray
    right_vectors: np.ndarray
    left_vectors: np.ndarray
    condition: np.ndarray
    norm: float

    def __len__(self):
        return len(self.eigenvalues)

    @property
    def energies(self) -> np.ndarray:
        return self.eigenvalues.real

    @property
    def widths(self) -> np.ndarray:
        """``Gamma_j = -2 Im E_j``."""
        return -2.0 * self.eigenvalues.imag

    @property
    def near_defective(self) -> np.ndarray:
        return self.condition > DEFECTIVE_KAPPA


@dataclass(frozen=True)
class Cluster:
    indices: tuple
    condition: tuple
    gaps: np.ndarray  # pairwise |E_i - E_j| within the cluster

    @property
    def max_gap(self) -> float:
        return float(self.gaps.max()) if self.gaps.size else 0.0


def _order(w):
    return np.lexsort((w.imag, w.real))


def _groups(w, tol):
    """Index groups of (consecutive in sorted order) eigenvalues within ``tol``."""
    groups, current = [], [0]
    for k in range(1, len(w)):
        if abs(w[k] - w[current[-1]]) <= tol:
            current.append(k)
        else:
            groups.append(current)
            current = [k]
    groups.append(current)
    return groups


def eig(matrix) -> Spectrum:
    """Eigenvalues with paired left/right eigenvectors.

    Raises
    ------
    NoConvergenceError
        If the QR iteration fails to converge.
    ValueError
        For non-square, empty or non-finite input.
    """
    a = np.asarray(matrix)
    if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] == 0:
        raise ValueError(f"expected a non-empty square matrix, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise ValueError("matrix has non-finite entries")
    a = a.astype(complex)
    norm = float(np.linalg.norm(a))
    try:
        w, vl, vr = scipy.linalg.eig(a, left=True, right=True)
    except np.linalg.LinAlgError as exc:
        raise NoConvergenceError(str(exc)) from exc

    order = _order(w)
    w, vl, vr = w[order], vl[:, order], vr[:, order]
    vr = vr / np.linalg.norm(vr, axis=0)
    vl = vl / np.linalg.norm(vl, axis=0)
    overlap = np.einsum("ij,ij->j", vl.conj(), vr)
    with np.errstate(divide="ignore"):
        kappa = np.where(overlap != 0, 1.0 / np.abs(overlap), np.inf)

    vl = vl / overlap.conj()
    # near-degenerate groups: LAPACK pairs are not mutually biorthogonal there
    for g in _groups(w, GAP_TOL * max(norm, 1.0)):
        if len(g) < 2 or np.any(kappa[g] > DEFECTIVE_KAPPA):
            continue
        m = vl[:, g].conj().T @ vr[:, g]
        if np.linalg.cond(m) < DEFECTIVE_KAPPA:
            vl[:, g] = vl[:, g] @ np.linalg.inv(m).conj().T

    for arr in (w, vl, vr, kappa):
        arr.setflags(write=False)
    return Spectrum(w, vr, vl, kappa, norm)


def defectiveness(spectrum: Spectrum, threshold: float = DEFECTIVE_KAPPA) -> List[Cluster]:
    """Group ill-conditioned eigenvalues into near-coalescing clusters.

    Every eigenvalue with ``kappa > threshold`` is joined with its nearest
    neighbour (an exceptional point always involves at least two states);
    overlapping pairs are merged.
    """
    w = spectrum.eigenvalues
    bad = np.flatnonzero(spectrum.condition > threshold)
    if bad.size == 0:
        return []
    parent = list(range(len(w)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    touched = set()
    for i in bad.tolist():
        touched.add(i)
        if len(w) > 1:
            d = np.abs(w - w[i])
            d[i] = np.inf
            j = int(np.argmin(d))
            touched.add(j)
            parent[find(i)] = find(j)

    members = {}
    for i in sorted(touched):
        members.setdefault(find(i), []).append(i)
    clusters = []
    for idx in sorted(members.values()):
        sub = w[idx]
        gaps = np.abs(sub[:, None] - sub[None, :])[np.triu_indices(len(idx), 1)]
        clusters.append(
            Cluster(tuple(idx), tuple(float(spectrum.condition[i]) for i in idx), gaps)
        )
    return clusters


def residuals(matrix, spectrum: Spectrum) -> np.ndarray:
    """``||A r_j - E_j r_j||`` for every unit right vector."""
    a = np.asarray(matrix, dtype=complex)
    r = spectrum.right_vectors
    return np.linalg.norm(a @ r - r * spectrum.eigenvalues, axis=0)


def biorthonormality_defect(spectrum: Spectrum, exclude_flagged: bool = True) -> float:
    """Largest ``|L_i^H R_j - delta_ij|`` over non-flagged states."""
    g = spectrum.left_vectors.conj().T @ spectrum.right_vectors
    d = np.abs(g - np.eye(len(g)))
    if exclude_flagged:
        keep = ~spectrum.near_defective
        d = d[np.ix_(keep, keep)]
    return float(d.max()) if d.size else 0.0
