import numpy as np
import pytest

from superradiance import GammaGrid, ModelSpec, sample_interaction, sweep
from superradiance.eig import eig
from superradiance.errors import AmbiguousTrackingError
from superradiance.observables import spectroscopic_factors
from superradiance.sweep import match_states, sweep_matrices
from superradiance.two_spin import TwoSpinParams, eigenvalues_closed_form, sz0_parts


def exhaustive_assignment(overlap):
    """Max total squared overlap by dynamic programming over subsets (exact)."""
    n = len(overlap)
    w = overlap**2
    best = {0: (0.0, ())}
    for i in range(n):
        nxt = {}
        for mask, (score, cols) in best.items():
            for k in range(n):
                if mask >> k & 1:
                    continue
                m = mask | 1 << k
                cand = (score + w[i, k], cols + (k,))
                if m not in nxt or cand[0] > nxt[m][0]:
                    nxt[m] = cand
        best = nxt
    return np.array(best[(1 << n) - 1][1])


def test_grid_validation():
    with pytest.raises(ValueError):
        GammaGrid([0.0, 0.0, 1.0])
    with pytest.raises(ValueError):
        GammaGrid([-1.0, 1.0])
    g = GammaGrid.default()
    assert len(g) == 201 and g.values[0] == 0 and g.values[1] == pytest.approx(1e-2)
    assert g.values[-1] == pytest.approx(1e2)


def test_single_point_grid_is_shell_model():
    spec = ModelSpec(3, 6, seed=2)
    traj = sweep(spec, sample_interaction(spec), GammaGrid([0.0]))
    assert traj.widths.shape == (1, 20)
    assert np.abs(traj.widths).max() < 1e-12
    assert np.allclose(np.sort(traj.energies[0]), np.linalg.eigvalsh(traj.hamiltonian.hermitian))


def test_start_labels_follow_sorted_order(traj48):
    assert np.array_equal(traj48.index[0], np.arange(70))
    assert np.all(np.diff(traj48.energies[0]) >= 0)


def test_tracking_is_bijection(traj48):
    for k, (s, ix) in enumerate(zip(traj48.spectra, traj48.index)):
        assert sorted(ix) == list(range(70))
        assert np.array_equal(np.sort_complex(traj48.eigenvalues[k]), np.sort_complex(s.eigenvalues))


def test_sum_rule_everywhere(traj48):
    g = traj48.gamma[1:]
    total = traj48.widths[1:].sum(axis=1)
    assert np.all(np.abs(total - 35 * g) < 1e-8 * 35 * g)


def test_large_gamma_segregation(spec48):
    traj = sweep(spec48, sample_interaction(spec48), GammaGrid.log(1e-2, 50, 150))
    sf = spectroscopic_factors(traj.spectra[-1], traj.gamma[-1])
    assert np.count_nonzero(sf > 0.9) == 35
    assert np.count_nonzero(sf < 0.1) == 35
    # trapped widths shrink like 1/gamma, leaving a clear gap
    widths = np.sort(traj.widths[-1])[::-1]
    assert widths[34] / widths[35] > 10


def test_trajectories_are_continuous_under_refinement(spec48):
    v = sample_interaction(spec48)
    jumps = []
    for points in (50, 100, 200):
        traj = sweep(spec48, v, GammaGrid.log(1.0, 10.0, points, include_zero=False))
        jumps.append(np.abs(np.diff(traj.eigenvalues, axis=0)).max())
    assert jumps[2] < jumps[1] < jumps[0]


def test_two_spin_tracking_matches_closed_form():
    alpha = 1.0
    h, door = sz0_parts(alpha)
    grid = np.concatenate([np.linspace(0, 1.9, 40), np.linspace(2.1, 8, 40)])
    traj = sweep_matrices(h, door, GammaGrid(grid, "linear"))
    closed = np.array([eigenvalues_closed_form(TwoSpinParams(alpha, 0, g)) for g in grid])
    below, above = grid < 2, grid > 2
    for j in range(2):
        got = traj.eigenvalues[:, j]
        for side in (below, above):
            # each tracked state follows one closed-form branch on each side
            dev = [np.abs(got[side] - closed[side, b]).max() for b in range(2)]
            assert min(dev) < 1e-8


class TestMatchStates:
    def test_identity(self, rng):
        s = eig(rng.standard_normal((6, 6)))
        a = match_states(s, s)
        assert np.array_equal(a.permutation, np.arange(6))
        assert np.allclose(a.overlaps, 1)

    def test_transposition(self, rng):
        s = eig(rng.standard_normal((5, 5)) + 1j * rng.standard_normal((5, 5)))
        order = np.array([0, 3, 2, 1, 4])
        swapped = type(s)(
            s.eigenvalues[order], s.right_vectors[:, order], s.left_vectors[:, order],
            s.condition[order], s.norm,
        )
        assert np.array_equal(match_states(s, swapped).permutation, order)

    @pytest.mark.parametrize("seed", range(6))
    def test_nearby_gamma_matches_exhaustive(self, seed):
        rng = np.random.default_rng(seed)
        h = rng.standard_normal((10, 10))
        h = h + h.T
        door = (rng.random(10) < 0.5).astype(float)
        g0 = rng.uniform(0, 3)
        m0 = h - 0.5j * g0 * np.diag(door)
        dg = 1e-3 * np.linalg.norm(m0)
        s0, s1 = eig(m0), eig(h - 0.5j * (g0 + dg) * np.diag(door))
        ov = np.abs(s0.right_vectors.conj().T @ s1.right_vectors)
        assert np.array_equal(match_states(s0, s1).permutation, exhaustive_assignment(ov))

    def test_optimal_fallback_agrees_with_exhaustive(self, rng):
        # a large jump forces the fallback path
        h = rng.standard_normal((8, 8))
        h = h + h.T
        door = np.array([1, 1, 1, 1, 0, 0, 0, 0.0])
        s0, s1 = eig(h), eig(h - 0.5j * 40 * np.diag(door))
        a = match_states(s0, s1)
        ov = np.abs(s0.right_vectors.conj().T @ s1.right_vectors)
        best = exhaustive_assignment(ov)
        assert (ov[np.arange(8), a.permutation] ** 2).sum() >= (ov[np.arange(8), best] ** 2).sum() - 1e-12
        if a.method == "optimal":
            assert np.array_equal(a.permutation, best)


def test_ambiguous_tracking_recorded_and_strict_raises(rng):
    h = rng.standard_normal((30, 30))
    h = h + h.T
    door = (np.arange(30) % 2).astype(float)
    grid = GammaGrid([0.0, 1e4], "linear")
    traj = sweep_matrices(h, door, grid)
    assert traj.ambiguous == [(0.0, 1e4)]
    assert traj.confidence[1].min() < 0.5
    with pytest.raises(AmbiguousTrackingError) as info:
        sweep_matrices(h, door, grid, strict=True)
    assert info.value.gamma_interval == (0.0, 1e4)


def test_parallel_spectra_identical(spec48):
    v = sample_interaction(spec48)
    grid = GammaGrid.log(0.1, 10, 20)
    a = sweep(spec48, v, grid)
    b = sweep(spec48, v, grid, max_workers=4)
    assert np.array_equal(a.eigenvalues, b.eigenvalues)
