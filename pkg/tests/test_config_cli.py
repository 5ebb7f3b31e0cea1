import csv
import json

import numpy as np
import pytest

from superradiance.cli import main
from superradiance.config import RunConfig, dump_config, parse_config
from superradiance.errors import ConfigError
from superradiance.hamiltonian import ModelSpec
from superradiance.output import fmt

SMALL = """\
n-particles = 2
n-orbitals = 5
delta-eps = 0.5
seed = 3
gamma-points = 12
gamma-max = 10
"""


def write(tmp_path, text, name="run.cfg"):
    p = tmp_path / name
    p.write_text(text)
    return str(p)


class TestConfig:
    def test_parse_values_and_comments(self):
        cfg = parse_config("# comment\nn-particles = 3  # inline\nemit = figures, trajectories\n")
        assert cfg.model.n_particles == 3
        assert cfg.emit == ("trajectories", "figures")

    def test_unknown_key_reports_line_and_key(self):
        with pytest.raises(ConfigError) as info:
            parse_config("seed = 1\n\nfoo = 2\n")
        assert info.value.line == 3 and info.value.key == "foo"
        assert "line 3" in str(info.value) and "'foo'" in str(info.value)

    def test_bad_value_and_missing_equals(self):
        with pytest.raises(ConfigError) as info:
            parse_config("seed = seven\n")
        assert info.value.key == "seed" and info.value.line == 1
        with pytest.raises(ConfigError) as info:
            parse_config("seed 7\n")
        assert info.value.line == 1

    def test_duplicate_key_in_either_spelling(self):
        with pytest.raises(ConfigError):
            parse_config("seed = 1\nseed = 2\n")
        with pytest.raises(ConfigError):
            parse_config("n-particles = 1\nn_particles = 2\n")

    def test_invalid_choices(self):
        for text in ("emit = pictures\n", "segre-kernel = box\n", "mode = three-spin\n",
                     "gamma-min = 0\n", "n-particles = 9\nn-orbitals = 8\n"):
            with pytest.raises(ConfigError):
                parse_config(text)

    @pytest.mark.parametrize("cfg", [
        RunConfig(),
        RunConfig(model=ModelSpec(3, 7, delta_eps=0.1, v_scale=2.0, seed=11, nu=2),
                  gamma_scale="linear", gamma_min=0.5, include_zero=False,
                  delta_eps_list=(0.0, 100.0), spectrum_gammas=(1.0, 3.5),
                  segre_kernel="literal", emit=("figures", "spectra")),
        RunConfig(mode="two-spin", alpha=0.3, epsilon=0.1, gamma_min=1 / 3),
    ])
    def test_round_trips(self, cfg):
        assert parse_config(dump_config(cfg)) == cfg
        assert RunConfig.from_dict(json.loads(json.dumps(cfg.to_dict()))) == cfg

    def test_overrides(self):
        cfg = RunConfig().with_overrides(seed=5, gamma_points=None, delta_eps=0.25)
        assert cfg.model.seed == 5 and cfg.model.delta_eps == 0.25 and cfg.gamma_points == 200


def test_fmt():
    assert fmt(0.1) == "0.10000000000000001"
    assert fmt(-0.0) == "0"
    assert fmt(np.nan) == "nan"
    assert fmt(3) == "3"


def test_run_writes_schemas(tmp_path):
    out = tmp_path / "out"
    cfg = write(tmp_path, SMALL + "emit = trajectories, occupations, segregation, spectra\n")
    assert main(["run", cfg, "--out", str(out)]) == 0
    with open(out / "trajectories.csv", newline="") as fh:
        rows = list(csv.reader(fh))
    assert rows[0] == ["gamma", "state_id", "E", "Gamma", "tracking_confidence"]
    assert len(rows) - 1 == 13 * 10
    with open(out / "occupations.csv", newline="") as fh:
        assert next(csv.reader(fh)) == ["gamma", "state_id", "n_fd", "n_hf", "flagged"]
    with open(out / "segregation.csv", newline="") as fh:
        assert next(csv.reader(fh)) == ["delta_eps", "gamma", "xi", "n_excluded"]
    assert b"\r\n" not in (out / "trajectories.csv").read_bytes()
    assert list(out.glob("spectrum_*.json"))
    meta = json.loads((out / "meta.json").read_text())
    assert meta["seed"] == 3 and meta["rng"]
    assert meta["residuals"]["width_sum_rule_max_rel"]
    assert RunConfig.from_dict(meta["config"]) == parse_config(
        open(cfg).read()).with_overrides(out=str(out))


def test_70_state_ids_per_gamma(tmp_path):
    out = tmp_path / "o"
    assert main(["run", "--gamma-points", "5", "--delta-eps", "0.5", "--out", str(out),
                 "--emit", "trajectories"]) == 0
    with open(out / "trajectories.csv", newline="") as fh:
        rows = list(csv.DictReader(fh))
    by_gamma = {}
    for r in rows:
        by_gamma.setdefault(r["gamma"], set()).add(r["state_id"])
    assert len(by_gamma) == 6
    assert all(ids == {str(j) for j in range(70)} for ids in by_gamma.values())


def test_two_delta_eps_curves(tmp_path):
    out = tmp_path / "o"
    cfg = write(tmp_path, SMALL + "emit = segregation\ndelta-eps-list = 0, 100\n")
    assert main(["run", cfg, "--out", str(out)]) == 0
    with open(out / "segregation.csv", newline="") as fh:
        rows = list(csv.DictReader(fh))
    assert {r["delta_eps"] for r in rows} == {"0", "100"}
    assert len(rows) == 2 * 13


def test_runs_are_byte_identical_and_figures_do_not_touch_csv(tmp_path):
    cfg = write(tmp_path, SMALL)
    a, b, c = tmp_path / "a", tmp_path / "b", tmp_path / "c"
    assert main(["run", cfg, "--out", str(a)]) == 0
    assert main(["run", cfg, "--out", str(b)]) == 0
    assert main(["run", cfg, "--out", str(c),
                 "--emit", "trajectories,occupations,segregation,figures"]) == 0
    for name in ("trajectories.csv", "occupations.csv", "segregation.csv"):
        assert (a / name).read_bytes() == (b / name).read_bytes() == (c / name).read_bytes()
    assert sorted(p.name for p in c.glob("*.svg")) == [
        "occupations.svg", "segregation.svg", "trajectories.svg"]


def test_exit_codes(tmp_path, capsys):
    assert main(["run", write(tmp_path, "bogus = 1\n"), "--out", str(tmp_path / "x")]) == 2
    assert "bogus" in capsys.readouterr().err
    assert main(["run", str(tmp_path / "missing.cfg")]) == 4
    blocker = tmp_path / "file"
    blocker.write_text("")
    assert main(["run", write(tmp_path, SMALL), "--out", str(blocker / "sub")]) == 4
    assert main(["verify", write(tmp_path, SMALL), "--inject-fault"]) == 3


def test_verify_default_config_passes(capsys):
    assert main(["verify"]) == 0
    out = capsys.readouterr().out
    assert "FAIL" not in out
    assert out.strip().splitlines()[-1].endswith("checks passed")


def test_verify_two_spin_mode(tmp_path, capsys):
    cfg = write(tmp_path, "mode = two-spin\ngamma-points = 50\ngamma-max = 6\n")
    assert main(["verify", cfg]) == 0
    out = capsys.readouterr().out
    assert "two-spin" in out and "FAIL" not in out


def test_two_spin_subcommand(tmp_path, capsys):
    assert main(["two-spin", "--gamma-points", "7"]) == 0
    cap = capsys.readouterr()
    lines = cap.out.strip().splitlines()
    assert lines[0].startswith("gamma,E_plus") and len(lines) == 8
    assert "gamma_c = 2" in cap.err
    out = tmp_path / "ts"
    assert main(["two-spin", "--out", str(out), "--figure"]) == 0
    assert (out / "two_spin.csv").exists() and (out / "two_spin.svg").exists()
