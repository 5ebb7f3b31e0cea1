import numpy as np
import pytest

from superradiance import GammaGrid, ModelSpec, sample_interaction, sweep

ACCEPTANCE_LINES = []


@pytest.fixture(scope="session")
def spec48():
    """Reference model: 4 fermions, 8 orbitals, spacing 0.5."""
    return ModelSpec(n_particles=4, n_orbitals=8, delta_eps=0.5, v_scale=1.0, seed=0)


@pytest.fixture(scope="session")
def traj48(spec48):
    return sweep(spec48, sample_interaction(spec48), GammaGrid.default())


@pytest.fixture
def rng():
    return np.random.default_rng(20020814)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for line in ACCEPTANCE_LINES:
        terminalreporter.write_line(line)
