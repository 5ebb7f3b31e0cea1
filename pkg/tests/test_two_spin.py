import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from superradiance.eig import eig
from superradiance.errors import CriticalPointError
from superradiance.two_spin import (
    TwoSpinParams,
    critical_gamma,
    eigenvalues_closed_form,
    full_hamiltonian,
    occupations_closed_form,
    sz0_block,
    widths_closed_form,
)


def test_singlet_triplet_energies():
    w = np.sort(np.linalg.eigvals(full_hamiltonian(TwoSpinParams(1.0, 0.0, 0.0))).real)
    assert np.allclose(w, [-0.75, 0.25, 0.25, 0.25])


def test_pure_zeeman():
    w = np.sort(np.linalg.eigvals(full_hamiltonian(TwoSpinParams(0.0, 1.0, 0.0))).real)
    assert np.allclose(w, [-1, 0, 0, 1])


def test_full_matrix_entries():
    p = TwoSpinParams(1.3, 0.4, 2.0)
    h = full_hamiltonian(p)
    assert h[0, 0] == pytest.approx(1.3 / 4 + 0.4 - 1.0j)
    assert h[3, 3] == pytest.approx(1.3 / 4 - 0.4)
    # S^z conservation: no coupling between the blocks
    assert not h[0, 1:].any() and not h[3, :3].any()


def test_sz0_block_matches_printed_form():
    alpha, gamma = 1.0, 2.0
    expected = -alpha / 4 * np.eye(2) + 0.5 * np.array([[-1j * gamma, alpha], [alpha, 0]])
    assert np.array_equal(sz0_block(TwoSpinParams(alpha, 0.0, gamma)), expected)
    assert np.array_equal(full_hamiltonian(TwoSpinParams(alpha, 5.0, gamma))[1:3, 1:3], expected)


def test_closed_form_values():
    ep, em = eigenvalues_closed_form(TwoSpinParams(1.0, 0.0, 0.0))
    assert (ep, em) == (0.25, -0.75)
    ep, em = eigenvalues_closed_form(TwoSpinParams(1.0, 0.0, 2.0))
    assert ep == em == -0.25 - 0.5j
    gp, gm = widths_closed_form(TwoSpinParams(1.0, 0.0, 10.0))
    assert gp == pytest.approx(5 + np.sqrt(24))
    assert gm == pytest.approx(5 - np.sqrt(24))
    assert gp == pytest.approx(9.899, abs=1e-3) and gm == pytest.approx(0.101, abs=1e-3)


@pytest.mark.parametrize("alpha, expected", [(1.0, 2.0), (0.0, 0.0), (-3.0, 6.0)])
def test_critical_gamma(alpha, expected):
    assert critical_gamma(alpha) == expected


def test_occupations_closed_form():
    assert occupations_closed_form(TwoSpinParams(1.0, 0.0, 1.0)) == (0.5, 0.5)
    n = occupations_closed_form(TwoSpinParams(1.0, 0.0, 4.0))
    assert n == pytest.approx((0.5 + 1 / np.sqrt(3), 0.5 - 1 / np.sqrt(3)))
    assert n[0] > 1 and n[1] < 0
    big = occupations_closed_form(TwoSpinParams(1.0, 0.0, 1e6))
    assert big == pytest.approx((1.0, 0.0), abs=1e-6)
    with pytest.raises(CriticalPointError):
        occupations_closed_form(TwoSpinParams(1.0, 0.0, 2.0))


def test_occupations_equal_finite_difference_of_closed_form():
    h = 1e-5
    for gamma in (0.7, 3.0, 4.0, 9.0):
        fd = [
            (a - b) / (2 * h)
            for a, b in zip(
                widths_closed_form(TwoSpinParams(1.0, 0.0, gamma + h)),
                widths_closed_form(TwoSpinParams(1.0, 0.0, gamma - h)),
            )
        ]
        assert fd == pytest.approx(occupations_closed_form(TwoSpinParams(1.0, 0.0, gamma)), abs=1e-8)


def test_branch_labels_broader_state_above_critical():
    for gamma in (2.5, 4.0, 50.0):
        gp, gm = widths_closed_form(TwoSpinParams(-1.5, 0.0, gamma + 3))
        assert gp > gm


@settings(max_examples=200, deadline=None)
@given(st.floats(-5, 5), st.floats(0, 20))
def test_closed_form_matches_numerics(alpha, gamma):
    if abs(gamma - critical_gamma(alpha)) < 1e-6:
        return
    p = TwoSpinParams(alpha, 0.0, gamma)
    w = np.sort_complex(eig(sz0_block(p)).eigenvalues)
    c = np.array(eigenvalues_closed_form(p))
    assert min(np.abs(w - c).max(), np.abs(w - c[::-1]).max()) < 1e-12


@given(st.floats(-5, 5), st.floats(0, 20))
def test_width_sum_rule(alpha, gamma):
    gp, gm = widths_closed_form(TwoSpinParams(alpha, 0.0, gamma))
    assert gp + gm == pytest.approx(gamma, abs=1e-12)


def test_level_attraction_below_critical():
    gammas = np.linspace(0, 1.99, 50)
    split = [np.diff(np.array(eigenvalues_closed_form(TwoSpinParams(1.0, 0, g))).real)[0] for g in gammas]
    assert np.all(np.diff(np.abs(split)) < 0)


def test_width_repulsion_above_critical():
    for g in np.linspace(2.01, 10, 20):
        ep, em = eigenvalues_closed_form(TwoSpinParams(1.0, 0, g))
        assert ep.real == em.real == -0.25
        assert -2 * ep.imag > -2 * em.imag


def test_magnetic_field_shifts_only_aligned_states():
    base = full_hamiltonian(TwoSpinParams(1.0, 0.0, 0.7))
    shifted = full_hamiltonian(TwoSpinParams(1.0, 0.3, 0.7))
    d = np.diag(shifted - base)
    assert np.allclose(d, [0.3, 0, 0, -0.3])
    assert np.array_equal(shifted[1:3, 1:3], base[1:3, 1:3])


def test_down_down_state_has_zero_width():
    h = full_hamiltonian(TwoSpinParams(1.0, 0.2, 3.0))
    assert h[3, 3].imag == 0.0
    assert h[2, 2].imag == 0.0
