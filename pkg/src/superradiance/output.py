"""Deterministic CSV/JSON writers for run results."""

from __future__ import annotations

import csv
import json
from pathlib import Path

import numpy as np

__all__ = [
    "fmt",
    "write_trajectories",
    "write_occupations",
    "write_segregation",
    "write_spectrum",
    "write_json",
]


def fmt(x) -> str:
    """17 significant digits, ``nan`` spelled out."""
    x = float(x) + 0.0  # folds -0.0 into 0.0
    if np.isnan(x):
        return "nan"
    return format(x, ".17g")


def _writer(fh):
    return csv.writer(fh, lineterminator="\n")


def write_trajectories(path, traj) -> Path:
    path = Path(path)
    gamma, e, w, conf = traj.gamma, traj.energies, traj.widths, traj.confidence
    with path.open("w", newline="") as fh:
        out = _writer(fh)
        out.writerow(["gamma", "state_id", "E", "Gamma", "tracking_confidence"])
        for k, g in enumerate(gamma):
            for j in range(e.shape[1]):
                out.writerow([fmt(g), j, fmt(e[k, j]), fmt(w[k, j]), fmt(conf[k, j])])
    return path


def write_occupations(path, fd, hf) -> Path:
    path = Path(path)
    flagged = fd.flagged | hf.flagged
    with path.open("w", newline="") as fh:
        out = _writer(fh)
        out.writerow(["gamma", "state_id", "n_fd", "n_hf", "flagged"])
        for k, g in enumerate(fd.gamma):
            for j in range(fd.values.shape[1]):
                out.writerow(
                    [fmt(g), j, fmt(fd.values[k, j]), fmt(hf.values[k, j]), int(flagged[k, j])]
                )
    return path


def write_segregation(path, curves) -> Path:
    """``curves`` maps delta_eps to a :class:`SegregationCurve`."""
    path = Path(path)
    with path.open("w", newline="") as fh:
        out = _writer(fh)
        out.writerow(["delta_eps", "gamma", "xi", "n_excluded"])
        for de, c in curves.items():
            for g, xi, nx in zip(c.gamma, c.xi, c.n_excluded):
                out.writerow([fmt(de), fmt(g), fmt(xi), int(nx)])
    return path


def write_json(path, data) -> Path:
    path = Path(path)
    path.write_text(json.dumps(data, indent=2, sort_keys=False) + "\n")
    return path


def write_spectrum(directory, gamma, spectrum) -> Path:
    data = {
        "gamma": float(gamma),
        "E": [float(x) for x in spectrum.energies],
        "Gamma": [float(x) for x in spectrum.widths],
        "condition": [float(x) for x in spectrum.condition],
        "near_defective": [bool(x) for x in spectrum.near_defective],
    }
    return write_json(Path(directory) / f"spectrum_{fmt(gamma)}.json", data)
