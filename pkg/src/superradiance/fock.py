"""
Many-body basis of N fermions in Omega orbitals.

Slater determinants are stored as integer bitstrings: bit ``k`` is set iff
orbital ``k`` is occupied.  Orbital 0 has the lowest single-particle energy
and the decaying orbital is, by default, the top one (``Omega - 1``).

The determinant for occupied orbitals ``k1 < k2 < ... < kN`` is
``a+_{k1} a+_{k2} ... a+_{kN} |0>``, so the sign picked up by ``a_k`` or
``a+_k`` is ``(-1)**(number of occupied orbitals below k)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from math import comb
from typing import Iterator, Optional, Tuple

import numpy as np

from .errors import InvalidDimensionsError

__all__ = [
    "MAX_ORBITALS",
    "SlaterDeterminant",
    "FockBasis",
    "enumerate_basis",
    "count_doorway",
    "annihilate",
    "create",
    "occupancy",
]

# bitstrings must fit a signed 64-bit integer for vectorized numpy work
MAX_ORBITALS = 62


def _parity_below(bits: int, orbital: int) -> int:
    if bin(bits & ((1 << orbital) - 1)).count("1") % 2:
        return -1
    return 1


@dataclass(frozen=True, order=True)
class SlaterDeterminant:
    """Occupation bitstring over ``n_orbitals`` orbitals."""

    bits: int
    n_orbitals: int = field(compare=False)

    def __post_init__(self):
        if self.bits < 0 or self.bits >> self.n_orbitals:
            raise InvalidDimensionsError(
                f"bitstring {self.bits:b} does not fit {self.n_orbitals} orbitals"
            )

    @classmethod
    def from_string(cls, s: str) -> "SlaterDeterminant":
        """Parse ``"0110"`` style strings (leftmost character = highest orbital)."""
        return cls(int(s, 2), len(s))

    @classmethod
    def from_orbitals(cls, orbitals, n_orbitals: int) -> "SlaterDeterminant":
        bits = 0
        for k in orbitals:
            bits |= 1 << k
        return cls(bits, n_orbitals)

    @property
    def n_particles(self) -> int:
        return bin(self.bits).count("1")

    @property
    def orbitals(self) -> Tuple[int, ...]:
        return tuple(k for k in range(self.n_orbitals) if (self.bits >> k) & 1)

    def __str__(self) -> str:
        return format(self.bits, f"0{self.n_orbitals}b") if self.n_orbitals else ""


def occupancy(det: SlaterDeterminant, orbital: int) -> int:
    """Occupation (0 or 1) of ``orbital`` in ``det``."""
    _check_orbital(det, orbital)
    return (det.bits >> orbital) & 1


def annihilate(
    det: SlaterDeterminant, orbital: int
) -> Optional[Tuple[SlaterDeterminant, int]]:
    """Apply ``a_orbital``; ``None`` when the orbital is empty."""
    _check_orbital(det, orbital)
    if not (det.bits >> orbital) & 1:
        return None
    sign = _parity_below(det.bits, orbital)
    return SlaterDeterminant(det.bits & ~(1 << orbital), det.n_orbitals), sign


def create(
    det: SlaterDeterminant, orbital: int
) -> Optional[Tuple[SlaterDeterminant, int]]:
    """Apply ``a+_orbital``; ``None`` when the orbital is already occupied."""
    _check_orbital(det, orbital)
    if (det.bits >> orbital) & 1:
        return None
    sign = _parity_below(det.bits, orbital)
    return SlaterDeterminant(det.bits | (1 << orbital), det.n_orbitals), sign


def _check_orbital(det, orbital):
    if not 0 <= orbital < det.n_orbitals:
        raise IndexError(f"orbital {orbital} outside 0..{det.n_orbitals - 1}")


@dataclass(frozen=True)
class FockBasis:
    """Sorted list of all determinants with a fixed particle number.

    Attributes
    ----------
    bits : ndarray of int64
        Bitstrings in ascending integer order.
    n_particles, n_orbitals : int
    """

    bits: np.ndarray
    n_particles: int
    n_orbitals: int
    _index: dict = field(repr=False, compare=False)

    def __len__(self) -> int:
        return len(self.bits)

    def __iter__(self) -> Iterator[SlaterDeterminant]:
        return (SlaterDeterminant(int(b), self.n_orbitals) for b in self.bits)

    def __getitem__(self, i) -> SlaterDeterminant:
        return SlaterDeterminant(int(self.bits[i]), self.n_orbitals)

    @property
    def dets(self) -> list:
        return list(self)

    def index(self, det) -> int:
        """Position of a determinant (or raw bitstring) in the basis."""
        bits = det.bits if isinstance(det, SlaterDeterminant) else int(det)
        return self._index[bits]

    def occupancy_vector(self, orbital: int) -> np.ndarray:
        """Occupation of ``orbital`` for every basis member, as floats."""
        if not 0 <= orbital < self.n_orbitals:
            raise IndexError(f"orbital {orbital} outside 0..{self.n_orbitals - 1}")
        return ((self.bits >> orbital) & 1).astype(float)


def enumerate_basis(n_particles: int, n_orbitals: int) -> FockBasis:
    """All ``comb(n_orbitals, n_particles)`` determinants, ascending."""
    if n_orbitals < 0 or n_particles < 0 or n_particles > n_orbitals:
        raise InvalidDimensionsError(
            f"cannot place {n_particles} fermions in {n_orbitals} orbitals"
        )
    if n_orbitals > MAX_ORBITALS:
        raise InvalidDimensionsError(f"at most {MAX_ORBITALS} orbitals supported")
    bits = sorted(
        sum(1 << k for k in occ) for occ in combinations(range(n_orbitals), n_particles)
    )
    arr = np.array(bits, dtype=np.int64)
    arr.setflags(write=False)
    return FockBasis(arr, n_particles, n_orbitals, {b: i for i, b in enumerate(bits)})


def count_doorway(n_particles: int, n_orbitals: int) -> int:
    """Number of determinants with a given orbital occupied.

    Returns 0 for ``n_particles == 0``.
    """
    if n_orbitals < 1 or n_particles < 0 or n_particles > n_orbitals:
        raise InvalidDimensionsError(
            f"cannot place {n_particles} fermions in {n_orbitals} orbitals"
        )
    if n_particles == 0:
        return 0
    return comb(n_orbitals - 1, n_particles - 1)
