"""
End-to-end runs: sweep, observables, files, and the invariant suite.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from math import comb
from pathlib import Path
from typing import Dict, List, Optional

import numpy as np

from . import __version__
from .config import RunConfig
from .eig import biorthonormality_defect, eig, residuals
from .fock import count_doorway, enumerate_basis
from .hamiltonian import RNG_NAME, ModelSpec, assemble, sample_interaction
from .observables import (
    fd_truncation_bound,
    occupations_fd,
    occupations_hf_sweep,
    segregation_curve,
)
from .output import write_json, write_occupations, write_segregation, write_spectrum, write_trajectories
from .sweep import TrajectorySet, match_states, sweep, sweep_matrices
from .two_spin import (
    TwoSpinParams,
    critical_gamma,
    eigenvalues_closed_form,
    full_hamiltonian,
    sz0_block,
    sz0_parts,
)

__all__ = ["RunResult", "Check", "run", "verify", "two_spin_table", "width_sum_residuals"]

log = logging.getLogger(__name__)

VARIANCE_CONVENTION = "independent canonical V_{pq;rs} ~ Normal(0, v_scale^2)"
#: safety factor on the finite-difference truncation estimate
FD_SAFETY = 3.0


@dataclass
class RunResult:
    config: RunConfig
    trajectories: TrajectorySet
    hf: object
    fd: object
    segregation: Dict[float, object]
    meta: dict
    files: List[Path] = field(default_factory=list)


def width_sum_residuals(traj: TrajectorySet, n_doorway: float) -> np.ndarray:
    """Relative violation of ``sum_j Gamma_j = gamma * n_doorway`` per grid point."""
    g = traj.gamma
    exact = g * n_doorway
    err = np.abs(traj.widths.sum(axis=1) - exact)
    return np.where(exact > 0, err / np.where(exact > 0, exact, 1.0), err)


def _sweep_for(config: RunConfig, delta_eps: Optional[float] = None):
    if config.mode == "two-spin":
        h, door = sz0_parts(config.alpha)
        traj = sweep_matrices(h, door, config.grid)
        return traj, door, 1
    spec = config.model if delta_eps is None else config.model.with_(delta_eps=delta_eps)
    traj = sweep(spec, sample_interaction(spec), config.grid)
    return traj, traj.hamiltonian.doorway, spec.n_doorway


def run(config: RunConfig) -> RunResult:
    """Compute everything requested by ``config`` and write it to ``config.out``."""
    out = Path(config.out)
    out.mkdir(parents=True, exist_ok=True)

    traj, door, n_door = _sweep_for(config)
    hf = occupations_hf_sweep(traj, door)
    fd = occupations_fd(traj) if len(traj.gamma) >= 3 else None

    curves = {}
    width_res = {}
    if config.mode == "two-spin":
        key = float(config.model.delta_eps)
        curves[key] = segregation_curve(hf, config.segre_sigma, config.segre_kernel)
        width_res[key] = float(width_sum_residuals(traj, n_door).max())
    else:
        for de in config.delta_eps_values:
            if de == config.model.delta_eps:
                t, h = traj, hf
            else:
                t, d, _ = _sweep_for(config, de)
                h = occupations_hf_sweep(t, d)
            curves[float(de)] = segregation_curve(h, config.segre_sigma, config.segre_kernel)
            width_res[float(de)] = float(width_sum_residuals(t, n_door).max())

    files = []
    if "trajectories" in config.emit:
        files.append(write_trajectories(out / "trajectories.csv", traj))
    if "occupations" in config.emit:
        if fd is None:
            log.warning("occupations.csv needs at least 3 grid points; skipped")
        else:
            files.append(write_occupations(out / "occupations.csv", fd, hf))
    if "segregation" in config.emit:
        files.append(write_segregation(out / "segregation.csv", curves))
    if "spectra" in config.emit:
        for g in config.spectrum_gammas or (float(config.grid.values[-1]),):
            m = traj.hamiltonian.at_gamma(g).matrix if traj.hamiltonian else sz0_block(
                TwoSpinParams(config.alpha, config.epsilon, g)
            )
            files.append(write_spectrum(out, g, eig(m)))

    meta = {
        "tool": "superradiance",
        "version": __version__,
        "config": config.to_dict(),
        "seed": config.model.seed,
        "rng": RNG_NAME,
        "quartet_order": "lexicographic (p<q) <= (r<s)",
        "variance_convention": VARIANCE_CONVENTION,
        "n_states": traj.n_states,
        "n_doorway": n_door,
        "residuals": {
            "width_sum_rule_max_rel": {repr(k): v for k, v in width_res.items()},
            "occupation_sum_rule_max_abs": float(np.nanmax(np.abs(hf.totals - n_door))),
        },
        "ambiguous_tracking": [list(iv) for iv in traj.ambiguous],
        "n_flagged_hf": int(hf.flagged.sum()),
    }
    if "figures" in config.emit:
        files.extend(_figures(out, traj, hf, curves))
    files.append(write_json(out / "meta.json", meta))
    return RunResult(config, traj, hf, fd, curves, meta, files)


def _figures(out, traj, hf, curves):
    from . import plotting

    return [
        plotting.plot_trajectories(traj, out / "trajectories.svg"),
        plotting.plot_occupations(hf, out / "occupations.svg"),
        plotting.plot_segregation(curves, out / "segregation.svg"),
    ]


@dataclass(frozen=True)
class Check:
    name: str
    value: float
    tolerance: float

    @property
    def passed(self) -> bool:
        return bool(np.isfinite(self.value) and self.value <= self.tolerance)

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"{status}  {self.name:<44s} {self.value:.3e}  (tol {self.tolerance:.1e})"


def two_spin_oracle_deviation(alphas, gammas) -> float:
    """Largest |closed form - numerical| over paired (alpha, gamma) samples."""
    worst = 0.0
    for a, g in zip(alphas, gammas):
        p = TwoSpinParams(float(a), 0.0, float(g))
        w = np.sort_complex(eig(sz0_block(p)).eigenvalues)
        ep, em = eigenvalues_closed_form(p)
        c = np.array([ep, em])
        dev = min(np.abs(w - c).max(), np.abs(w - c[::-1]).max())
        worst = max(worst, float(dev))
    return worst


def _two_spin_checks(config: RunConfig) -> List[Check]:
    rng = np.random.default_rng(12345)
    alphas = rng.uniform(-3, 3, 1000)
    gammas = rng.uniform(0, 12, 1000)
    keep = np.abs(gammas - 2 * np.abs(alphas)) > 1e-6
    checks = [
        Check(
            "two-spin closed form vs numeric",
            two_spin_oracle_deviation(alphas[keep], gammas[keep]),
            1e-12,
        )
    ]
    # 4x4 matrix: S^z=0 block embedded, S^z=+-1 states decoupled
    p = TwoSpinParams(config.alpha, config.epsilon, 1.0)
    full = full_hamiltonian(p)
    checks.append(
        Check("two-spin block embedding", float(np.abs(full[1:3, 1:3] - sz0_block(p)).max()), 0.0)
    )
    grid = config.grid.values
    grid = grid[np.abs(grid - critical_gamma(config.alpha)) > 1e-6]
    traj = sweep_matrices(*sz0_parts(config.alpha), type(config.grid)(grid, config.grid.scale))
    checks.append(
        Check("two-spin width sum rule", float(width_sum_residuals(traj, 1).max()), 1e-10)
    )
    return checks


def verify(config: RunConfig, *, inject_fault: bool = False) -> List[Check]:
    """Run the invariant suite for ``config``.

    ``inject_fault`` perturbs the Hermitian matrix asymmetrically so that the
    failure path can be exercised.
    """
    if config.mode == "two-spin":
        return _two_spin_checks(config)

    spec: ModelSpec = config.model
    basis = enumerate_basis(spec.n_particles, spec.n_orbitals)
    ham = assemble(spec, sample_interaction(spec), basis)
    h = np.array(ham.hermitian)
    if inject_fault:
        h[0, -1] += 1e-3 * max(1.0, np.abs(h).max())
    n_door = count_doorway(spec.n_particles, spec.n_orbitals)
    checks = [
        Check("basis dimension", abs(len(basis) - comb(spec.n_orbitals, spec.n_particles)), 0),
        Check("doorway count", abs(int(ham.doorway.sum()) - n_door), 0),
        Check("H symmetric", float(np.abs(h - h.T).max()), 0.0),
    ]

    traj = sweep_matrices(h, ham.doorway, config.grid, spec=spec, hamiltonian=ham)
    g = traj.gamma
    res, bio, tr = 0.0, 0.0, 0.0
    for gk, s in zip(g, traj.spectra):
        m = h - 0.5j * gk * np.diag(ham.doorway)
        res = max(res, float(residuals(m, s).max() / s.norm))
        bio = max(bio, biorthonormality_defect(s))
        tr = max(tr, float(abs(s.eigenvalues.sum() - np.trace(m)) / s.norm))
    checks += [
        Check("eigen residual / ||H||", res, 1e-10),
        Check("biorthonormality defect", bio, 1e-8),
        Check("trace identity / ||H||", tr, 1e-9),
        Check("width sum rule (relative)", float(width_sum_residuals(traj, n_door).max()), 1e-8),
    ]

    hf = occupations_hf_sweep(traj, ham.doorway)
    checks.append(
        Check("occupation sum rule", float(np.nanmax(np.abs(hf.totals - n_door))), 1e-6)
    )
    if len(g) >= 3:
        fd = occupations_fd(traj)
        bound = np.maximum(1e-3, fd_truncation_bound(g, hf.values, FD_SAFETY))
        ok = ~(fd.flagged | hf.flagged)
        excess = np.where(ok, np.abs(fd.values - hf.values) / bound, 0.0)
        checks.append(Check("FD vs HF occupations (err/bound)", float(excess.max()), 1.0))

    e_sym = np.linalg.eigvalsh(h if not inject_fault else 0.5 * (h + h.T))
    s0 = eig(h)
    scale = max(np.abs(e_sym).max(), 1e-300)
    checks.append(
        Check("hermitian limit: max |Im E|", float(np.abs(s0.eigenvalues.imag).max() / scale), 1e-10)
    )
    checks.append(
        Check(
            "hermitian limit vs eigvalsh",
            float(np.abs(np.sort(s0.eigenvalues.real) - e_sym).max() / scale),
            1e-10,
        )
    )
    checks.append(Check("perturbative widths (/gamma)", _perturbative_defect(h, ham.doorway), 1e-2))
    checks += _two_spin_checks(config)
    return checks


def _perturbative_defect(h, doorway, gamma=1e-3) -> float:
    """``max_j |Gamma_j - gamma n_nu(j)| / gamma`` with shell-model occupancies."""
    h = np.asarray(h)
    s0 = eig(h)
    s1 = eig(h - 0.5j * gamma * np.diag(doorway))
    perm = match_states(s0, s1).permutation
    n_sm = (np.abs(s0.right_vectors) ** 2 * np.asarray(doorway)[:, None]).sum(axis=0)
    return float(np.abs(s1.widths[perm] - gamma * n_sm).max() / gamma)


def two_spin_table(alpha: float, epsilon: float, gammas) -> dict:
    """Closed-form and numerical S^z=0 energies on ``gammas``."""
    rows = []
    for g in gammas:
        p = TwoSpinParams(alpha, epsilon, float(g))
        ep, em = eigenvalues_closed_form(p)
        w = np.sort_complex(eig(sz0_block(p)).eigenvalues)
        c = np.array([ep, em])
        dev = min(np.abs(w - c).max(), np.abs(w - c[::-1]).max())
        full = np.sort_complex(np.linalg.eigvals(full_hamiltonian(p)))
        rows.append({"gamma": float(g), "E_plus": ep, "E_minus": em, "deviation": float(dev), "full": full})
    return {"alpha": alpha, "epsilon": epsilon, "gamma_c": critical_gamma(alpha), "rows": rows}
