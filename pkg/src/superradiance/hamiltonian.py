"""
Shell-model Hamiltonian with one decaying orbital.

    H = sum_k eps_k n_k + 1/4 sum V_{12;34} a+_1 a+_2 a_3 a_4

with equidistant energies ``eps_k = k * delta_eps`` and Gaussian random
antisymmetrized two-body elements.  Openness enters through the complex
energy of orbital ``nu``: ``eps_nu -> eps_nu - i*gamma/2``, so the full
effective Hamiltonian is ``H - (i/2) * gamma * n_nu``.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from itertools import combinations
from typing import Optional

import numpy as np

from .errors import DimensionMismatchError, InvalidDimensionsError
from .fock import FockBasis, count_doorway, enumerate_basis

__all__ = [
    "RNG_NAME",
    "ModelSpec",
    "TwoBodyInteraction",
    "EffectiveHamiltonian",
    "sample_interaction",
    "assemble",
    "build",
    "w_matrix",
    "single_particle_energies",
]

RNG_NAME = f"numpy.random.PCG64 (numpy {np.__version__})"


@dataclass(frozen=True)
class ModelSpec:
    """Physical parameters of one effective Hamiltonian.

    ``nu`` defaults to the top orbital.  ``v_scale`` is the standard
    deviation of each independent two-body matrix element.
    """

    n_particles: int = 4
    n_orbitals: int = 8
    delta_eps: float = 1.0
    v_scale: float = 1.0
    gamma: float = 0.0
    seed: int = 0
    nu: Optional[int] = None

    def __post_init__(self):
        if not 0 <= self.n_particles <= self.n_orbitals or self.n_orbitals < 1:
            raise InvalidDimensionsError(
                f"cannot place {self.n_particles} fermions in {self.n_orbitals} orbitals"
            )
        for name in ("delta_eps", "v_scale", "gamma"):
            value = getattr(self, name)
            if not np.isfinite(value) or value < 0:
                raise ValueError(f"{name} must be finite and >= 0, got {value}")
        if self.nu is None:
            object.__setattr__(self, "nu", self.n_orbitals - 1)
        if not 0 <= self.nu < self.n_orbitals:
            raise InvalidDimensionsError(f"nu={self.nu} outside 0..{self.n_orbitals - 1}")

    @property
    def dimension(self) -> int:
        return len(enumerate_basis(self.n_particles, self.n_orbitals))

    @property
    def n_doorway(self) -> int:
        return count_doorway(self.n_particles, self.n_orbitals)

    def with_(self, **changes) -> "ModelSpec":
        return replace(self, **changes)


def _pairs(n_orbitals):
    return list(combinations(range(n_orbitals), 2))


@dataclass(frozen=True)
class TwoBodyInteraction:
    """Real antisymmetrized two-body matrix elements ``V_{pq;rs}``.

    Stored compactly as a symmetric matrix over ordered pairs ``p < q``;
    every other index order follows from antisymmetry.
    """

    pair_matrix: np.ndarray
    n_orbitals: int

    @property
    def pairs(self) -> list:
        return _pairs(self.n_orbitals)

    def element(self, p: int, q: int, r: int, s: int) -> float:
        if p == q or r == s:
            return 0.0
        sign = 1.0
        if p > q:
            p, q, sign = q, p, -sign
        if r > s:
            r, s, sign = s, r, -sign
        index = {pq: i for i, pq in enumerate(self.pairs)}
        return sign * float(self.pair_matrix[index[p, q], index[r, s]])

    @property
    def elements(self) -> np.ndarray:
        """Dense ``(Omega,)*4`` array of all elements."""
        n = self.n_orbitals
        out = np.zeros((n, n, n, n))
        pairs = self.pairs
        for i, (p, q) in enumerate(pairs):
            for j, (r, s) in enumerate(pairs):
                v = self.pair_matrix[i, j]
                out[p, q, r, s] = v
                out[q, p, r, s] = -v
                out[p, q, s, r] = -v
                out[q, p, s, r] = v
        return out

    def canonical(self) -> np.ndarray:
        """Independent elements in the order they were drawn."""
        return self.pair_matrix[np.triu_indices(len(self.pair_matrix))]


def sample_interaction(spec: ModelSpec) -> TwoBodyInteraction:
    """Draw the random two-body interaction for ``spec.seed``.

    One standard normal per canonical quartet ``(p<q) <= (r<s)``, visited
    in lexicographic order of ``(p, q, r, s)``, scaled by ``v_scale``.
    """
    pairs = _pairs(spec.n_orbitals)
    m = len(pairs)
    rng = np.random.default_rng(spec.seed)
    draws = rng.standard_normal(m * (m + 1) // 2) * spec.v_scale
    mat = np.zeros((m, m))
    mat[np.triu_indices(m)] = draws
    mat = mat + np.triu(mat, 1).T
    mat.setflags(write=False)
    return TwoBodyInteraction(mat, spec.n_orbitals)


def single_particle_energies(spec: ModelSpec) -> np.ndarray:
    return spec.delta_eps * np.arange(spec.n_orbitals, dtype=float)


def _two_body_matrix(v: TwoBodyInteraction, basis: FockBasis) -> np.ndarray:
    dim = len(basis)
    out = np.zeros((dim, dim))
    pairs = v.pairs
    pair_index = {pq: i for i, pq in enumerate(pairs)}
    vm = v.pair_matrix
    for col, bits in enumerate(basis.bits.tolist()):
        occ = [k for k in range(basis.n_orbitals) if (bits >> k) & 1]
        for r, s in combinations(occ, 2):
            # a_r a_s |bits>: a_s first, then a_r (r < s, so r is still below s)
            sign = _sign(bits, s)
            mid = bits & ~(1 << s)
            sign *= _sign(mid, r)
            mid &= ~(1 << r)
            j = pair_index[r, s]
            for i, (p, q) in enumerate(pairs):
                if (mid >> p) & 1 or (mid >> q) & 1:
                    continue
                t = sign * _sign(mid, q)
                ket = mid | (1 << q)
                t *= _sign(ket, p)
                ket |= 1 << p
                out[basis.index(ket), col] += t * vm[i, j]
    return out


def _sign(bits, k):
    return -1 if bin(bits & ((1 << k) - 1)).count("1") % 2 else 1


@dataclass(frozen=True)
class EffectiveHamiltonian:
    """``H - (i/2) * gamma * n_nu`` on a Fock basis.

    ``hermitian`` is the real symmetric shell-model part and
    ``doorway`` the 0/1 occupation of the decaying orbital per basis
    state.  Changing gamma only rewrites the imaginary diagonal.
    """

    hermitian: np.ndarray
    doorway: np.ndarray
    basis: FockBasis
    spec: ModelSpec
    gamma: float = field(default=None)

    def __post_init__(self):
        if self.gamma is None:
            object.__setattr__(self, "gamma", self.spec.gamma)

    @property
    def matrix(self) -> np.ndarray:
        m = self.hermitian.astype(complex)
        m[np.diag_indices_from(m)] -= 0.5j * self.gamma * self.doorway
        return m

    @property
    def w(self) -> np.ndarray:
        return np.diag(self.gamma * self.doorway)

    def at_gamma(self, gamma: float) -> "EffectiveHamiltonian":
        if not np.isfinite(gamma) or gamma < 0:
            raise ValueError(f"gamma must be finite and >= 0, got {gamma}")
        return replace(self, gamma=float(gamma), spec=self.spec.with_(gamma=float(gamma)))

    @property
    def width_sum(self) -> float:
        """``-2 Im Tr`` of the matrix, the exact total width."""
        return float(self.gamma * self.doorway.sum())


def assemble(
    spec: ModelSpec, v: TwoBodyInteraction, basis: FockBasis
) -> EffectiveHamiltonian:
    """Build the effective Hamiltonian for ``spec`` on ``basis``."""
    if basis.n_particles != spec.n_particles or basis.n_orbitals != spec.n_orbitals:
        raise DimensionMismatchError(
            f"basis ({basis.n_particles}, {basis.n_orbitals}) does not match "
            f"spec ({spec.n_particles}, {spec.n_orbitals})"
        )
    if v.n_orbitals != spec.n_orbitals:
        raise DimensionMismatchError(
            f"interaction has {v.n_orbitals} orbitals, spec has {spec.n_orbitals}"
        )
    eps = single_particle_energies(spec)
    occ = np.array([[(b >> k) & 1 for k in range(spec.n_orbitals)] for b in basis.bits.tolist()],
                   dtype=float).reshape(len(basis), spec.n_orbitals)
    h = _two_body_matrix(v, basis)
    h = 0.5 * (h + h.T)
    h[np.diag_indices_from(h)] += occ @ eps
    h.setflags(write=False)
    door = basis.occupancy_vector(spec.nu)
    door.setflags(write=False)
    return EffectiveHamiltonian(h, door, basis, spec)


def build(spec: ModelSpec) -> EffectiveHamiltonian:
    """Sample the interaction and assemble in one step."""
    basis = enumerate_basis(spec.n_particles, spec.n_orbitals)
    return assemble(spec, sample_interaction(spec), basis)


def w_matrix(spec: ModelSpec, basis: FockBasis) -> np.ndarray:
    """Diagonal decay matrix ``gamma * n_nu``."""
    return np.diag(spec.gamma * basis.occupancy_vector(spec.nu))
