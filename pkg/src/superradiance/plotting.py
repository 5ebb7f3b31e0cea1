"""SVG figures derived from computed results (never feeds back into numbers)."""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

__all__ = ["plot_trajectories", "plot_occupations", "plot_segregation", "plot_two_spin"]

_SVG_META = {"Date": None}


def _save(fig, path):
    with matplotlib.rc_context({"svg.hashsalt": "superradiance", "svg.fonttype": "none"}):
        fig.savefig(path, format="svg", metadata=_SVG_META)
    plt.close(fig)
    return Path(path)


def plot_trajectories(traj, path):
    """Complex-plane trajectories, width increasing downwards."""
    fig, ax = plt.subplots(figsize=(6, 5))
    e, w = traj.energies, traj.widths
    for j in range(e.shape[1]):
        ax.plot(e[:, j], w[:, j], lw=0.6)
        ax.plot(e[:1, j], w[:1, j], "k.", ms=3)
    ax.invert_yaxis()
    ax.set_xlabel("E")
    ax.set_ylabel(r"$\Gamma$")
    return _save(fig, path)


def plot_occupations(occ, path, n_states=13):
    """Effective occupations of the lowest states (labelled at the first grid point)."""
    fig, ax = plt.subplots(figsize=(6, 4))
    g = occ.gamma
    mask = g > 0
    for j in range(min(n_states, occ.values.shape[1])):
        ax.plot(g[mask], occ.values[mask, j], lw=0.8)
    ax.set_xscale("log")
    ax.set_xlabel(r"$\gamma$")
    ax.set_ylabel(r"$n_\nu$")
    return _save(fig, path)


def plot_segregation(curves, path):
    fig, ax = plt.subplots(figsize=(6, 4))
    for de, c in curves.items():
        mask = c.gamma > 0
        ax.plot(c.gamma[mask], c.xi[mask], label=rf"$\Delta\epsilon={de:g}$")
    ax.set_xscale("log")
    ax.set_ylim(-0.02, 1.05)
    ax.set_xlabel(r"$\gamma$")
    ax.set_ylabel(r"$\xi$")
    ax.legend(frameon=False, fontsize=8)
    return _save(fig, path)


def plot_two_spin(gamma, e_plus, e_minus, path):
    fig, ax = plt.subplots(figsize=(5, 4))
    for e, label in ((np.asarray(e_plus), "+"), (np.asarray(e_minus), "-")):
        ax.plot(e.real, -2 * e.imag, label=label)
    ax.invert_yaxis()
    ax.set_xlabel("E")
    ax.set_ylabel(r"$\Gamma$")
    ax.legend(frameon=False)
    return _save(fig, path)

