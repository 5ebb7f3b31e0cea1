"""
Two coupled spin-1/2 molecules where molecule 1 decays from s1z = +1/2.

    H = alpha s1.s2 + epsilon (s1z + s2z) - (i/2) gamma (s1z + 1/2)

The S^z = 0 block is a two-level open system with an exceptional point at
``gamma = 2|alpha|``: below it the widths are equal and the energies
attract, above it the energies are locked and the widths repel.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import CriticalPointError

__all__ = [
    "TwoSpinParams",
    "M_SCHEME_BASIS",
    "full_hamiltonian",
    "sz0_block",
    "sz0_parts",
    "eigenvalues_closed_form",
    "critical_gamma",
    "occupations_closed_form",
    "widths_closed_form",
]

M_SCHEME_BASIS = ("++", "+-", "-+", "--")


@dataclass(frozen=True)
class TwoSpinParams:
    alpha: float = 1.0
    epsilon: float = 0.0
    gamma: float = 0.0

    def __post_init__(self):
        for name in ("alpha", "epsilon", "gamma"):
            if not math.isfinite(getattr(self, name)):
                raise ValueError(f"{name} must be finite")
        if self.gamma < 0:
            raise ValueError(f"gamma must be >= 0, got {self.gamma}")


def full_hamiltonian(p: TwoSpinParams) -> np.ndarray:
    """4x4 matrix in the m-scheme basis ``|++>, |+->, |-+>, |-->``."""
    a, e, g = p.alpha, p.epsilon, p.gamma
    h = np.zeros((4, 4), dtype=complex)
    # alpha (s1z s2z) on the diagonal, alpha/2 (s1+ s2- + h.c.) flips +- <-> -+
    h[0, 0] = a / 4 + e - 0.5j * g
    h[1, 1] = -a / 4 - 0.5j * g
    h[2, 2] = -a / 4
    h[3, 3] = a / 4 - e
    h[1, 2] = h[2, 1] = a / 2
    return h


def sz0_parts(alpha: float):
    """Hermitian part and decay-projector diagonal of the S^z=0 block.

    The block at width ``gamma`` is ``hermitian - (i/2) gamma diag(doorway)``.
    """
    hermitian = np.array([[-alpha / 4, alpha / 2], [alpha / 2, -alpha / 4]])
    doorway = np.array([1.0, 0.0])
    return hermitian, doorway


def sz0_block(p: TwoSpinParams) -> np.ndarray:
    """``-alpha/4 + 1/2 [[-i gamma, alpha], [alpha, 0]]`` on ``|+->, |-+>``."""
    hermitian, doorway = sz0_parts(p.alpha)
    return hermitian - 0.5j * p.gamma * np.diag(doorway)


def critical_gamma(alpha: float) -> float:
    return 2.0 * abs(alpha)


def eigenvalues_closed_form(p: TwoSpinParams):
    """Exact ``(E+, E-)`` of the S^z=0 block.

    Below the critical width ``E+`` is the upper level; above it ``E+`` is
    the broader (superradiant) state.
    """
    a = abs(p.alpha)
    # factored form avoids cancellation close to the critical point
    disc = (a - p.gamma / 2) * (a + p.gamma / 2)
    if disc >= 0:
        root = complex(math.sqrt(disc))
    else:
        root = -1j * math.sqrt(-disc)
    centre = -p.alpha / 4 - 0.25j * p.gamma
    return centre + 0.5 * root, centre - 0.5 * root


def occupations_closed_form(p: TwoSpinParams):
    """``(dGamma+/dgamma, dGamma-/dgamma)``; undefined at the critical point."""
    gc = critical_gamma(p.alpha)
    if p.gamma == gc:
        raise CriticalPointError(f"occupations undefined at gamma = {gc}")
    if p.gamma < gc:
        return 0.5, 0.5
    a = abs(p.alpha)
    t = 0.25 * p.gamma / math.sqrt((p.gamma / 2 - a) * (p.gamma / 2 + a))
    return 0.5 + t, 0.5 - t


def widths_closed_form(p: TwoSpinParams):
    e_plus, e_minus = eigenvalues_closed_form(p)
    return -2 * e_plus.imag, -2 * e_minus.imag

