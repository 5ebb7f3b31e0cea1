"""
Effective occupation numbers and the segregation fraction.

The effective occupation of the decaying orbital for state ``j`` is the
slope ``dGamma_j/dgamma``.  It is computed two ways: by finite differences
along tracked trajectories, and from the biorthogonal expectation value

    n_j = Re[ <L_j| n_nu |R_j> / <L_j|R_j> ],

which is exact because the matrix depends on gamma only through
``-(i/2) gamma n_nu``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Optional

import numpy as np

from .eig import DEFECTIVE_KAPPA, Spectrum
from .sweep import MIN_OVERLAP, TrajectorySet

__all__ = [
    "OccupationCurve",
    "Occupations",
    "SegregationCurve",
    "occupations_hf",
    "occupations_hf_sweep",
    "occupations_fd",
    "fd_truncation_bound",
    "spectroscopic_factors",
    "segregation_fraction",
    "segregation_curve",
]


@dataclass(frozen=True)
class OccupationCurve:
    state_id: int
    gamma: np.ndarray
    values: np.ndarray
    flagged: np.ndarray
    method: str


@dataclass(frozen=True)
class Occupations:
    """Occupations for all tracked states, ``values[k, j]`` at ``gamma[k]``."""

    gamma: np.ndarray
    values: np.ndarray
    flagged: np.ndarray
    method: str

    def curve(self, j: int) -> OccupationCurve:
        return OccupationCurve(j, self.gamma, self.values[:, j], self.flagged[:, j], self.method)

    def curves(self) -> List[OccupationCurve]:
        return [self.curve(j) for j in range(self.values.shape[1])]

    @property
    def totals(self) -> np.ndarray:
        return self.values.sum(axis=1)


def occupations_hf(doorway, spectrum: Spectrum, threshold: float = DEFECTIVE_KAPPA):
    """Biorthogonal expectation of ``n_nu`` for every eigenpair.

    Parameters
    ----------
    doorway : array_like or EffectiveHamiltonian
        Diagonal of the occupation operator of the decaying orbital.
    spectrum : Spectrum

    Returns
    -------
    values, flagged : ndarray
        ``values[j]`` is NaN where ``flagged[j]`` (condition number above
        ``threshold``).
    """
    door = np.asarray(getattr(doorway, "doorway", doorway), dtype=float)
    left, right = spectrum.left_vectors, spectrum.right_vectors
    num = np.einsum("ij,i,ij->j", left.conj(), door, right)
    den = np.einsum("ij,ij->j", left.conj(), right)
    values = (num / den).real
    flagged = spectrum.condition > threshold
    return np.where(flagged, np.nan, values), flagged


def occupations_hf_sweep(traj: TrajectorySet, doorway=None) -> Occupations:
    """:func:`occupations_hf` at every grid point, in tracked order."""
    if doorway is None:
        doorway = traj.hamiltonian.doorway
    vals, flags = [], []
    for s, ix in zip(traj.spectra, traj.index):
        v, f = occupations_hf(doorway, s)
        vals.append(v[ix])
        flags.append(f[ix])
    return Occupations(traj.gamma, np.array(vals), np.array(flags), "expectation-value")


def occupations_fd(traj: TrajectorySet) -> Occupations:
    """Second-order finite differences of tracked widths.

    Central differences on the (possibly non-uniform) grid, one-sided at the
    ends.  Points touching a link with overlap below ``MIN_OVERLAP`` or a
    near-defective eigenpair are flagged but kept.
    """
    if len(traj.gamma) < 3:
        raise ValueError("finite differences need at least 3 grid points")
    g = traj.gamma
    values = np.gradient(traj.widths, g, axis=0, edge_order=2)
    # weak[k]: link k-1 -> k; it spoils the stencils centred at k-1 and k
    weak = traj.confidence < MIN_OVERLAP
    bad = weak.copy()
    bad[:-1] |= weak[1:]
    bad[0] |= weak[2]
    bad[-1] |= weak[-2]
    flagged = bad | traj.flagged()
    return Occupations(g, values, flagged, "finite-difference")


def fd_truncation_bound(gamma, reference: np.ndarray, safety: float = 1.0) -> np.ndarray:
    """Estimated truncation error of :func:`occupations_fd`.

    The three-point slope on a non-uniform grid errs by about
    ``h_lo h_hi / 6 * Gamma'''`` (``h**2 / 3 * Gamma'''`` at the ends).  The
    third derivative is the second derivative of an accurate occupation
    curve ``reference`` (e.g. the expectation-value one), maximized over the
    stencil; the bound used is ``safety * h_max**2 * max|n''|``.
    """
    g = np.asarray(gamma, dtype=float)
    n = np.asarray(reference, dtype=float)
    d2 = np.abs(np.gradient(np.gradient(n, g, axis=0, edge_order=2), g, axis=0, edge_order=2))
    h = np.diff(g)
    h_max = np.maximum(np.concatenate([h[:1], h]), np.concatenate([h, h[-1:]]))
    local = np.maximum.reduce([d2, np.roll(d2, 1, axis=0), np.roll(d2, -1, axis=0)])
    local[0] = np.maximum(d2[0], d2[1])
    local[-1] = np.maximum(d2[-1], d2[-2])
    shape = (-1,) + (1,) * (n.ndim - 1)
    return safety * h_max.reshape(shape) ** 2 * local


def spectroscopic_factors(spectrum: Spectrum, gamma: float) -> np.ndarray:
    """``Gamma_j / gamma``."""
    if gamma == 0:
        raise ZeroDivisionError("spectroscopic factors undefined at gamma = 0")
    return spectrum.widths / gamma


def _kernel(n, sigma, kernel):
    s2 = 2.0 * sigma**2
    if kernel == "distance":
        return np.exp(-(n**2) / s2) + np.exp(-((1.0 - n) ** 2) / s2)
    if kernel == "literal":
        return np.exp(-(n**2) / s2) + np.exp(-((1.0 - n**2) ** 2) / s2)
    raise ValueError(f"unknown segregation kernel {kernel!r}")


def segregation_fraction(
    occupations,
    sigma: float = 0.1,
    kernel: str = "distance",
    exclude: Optional[np.ndarray] = None,
) -> float:
    """Fraction of states whose occupation sits near 0 or 1.

    ``kernel="distance"`` scores ``exp(-n^2/2s^2) + exp(-(1-n)^2/2s^2)``;
    ``"literal"`` uses ``(1-n^2)`` in the second exponent.  Entries marked
    in ``exclude`` (or NaN) are dropped and the average renormalized.
    """
    n = np.asarray(occupations, dtype=float)
    keep = np.isfinite(n)
    if exclude is not None:
        keep &= ~np.asarray(exclude, dtype=bool)
    if not keep.any():
        return float("nan")
    return float(np.mean(_kernel(n[keep], sigma, kernel)))


@dataclass(frozen=True)
class SegregationCurve:
    gamma: np.ndarray
    xi: np.ndarray
    n_excluded: np.ndarray
    sigma: float
    kernel: str


def segregation_curve(
    occ: Occupations, sigma: float = 0.1, kernel: str = "distance"
) -> SegregationCurve:
    """``xi(gamma)`` from an occupation table, skipping flagged states."""
    xi, excl = [], []
    for row, flags in zip(occ.values, occ.flagged):
        drop = flags | ~np.isfinite(row)
        xi.append(segregation_fraction(row, sigma, kernel, exclude=drop))
        excl.append(int(drop.sum()))
    return SegregationCurve(occ.gamma, np.array(xi), np.array(excl), sigma, kernel)
