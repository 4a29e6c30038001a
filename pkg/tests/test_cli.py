import json
import shutil
from pathlib import Path

import numpy as np
import pytest
import yaml

from trimirror.cli import main
from trimirror.scenarios import PRESETS, load_config, preset_config

# a deliberately small, fast configuration exercising every output kind
SMALL_DOC = {
    "scenario": "two-photon",
    "params": {"omega_a": 1.0025, "omega_b": 1.0, "omega_c": 1.0025, "g": 0.05,
               "gamma_a": 5e-4, "gamma_b": 5e-4, "gamma_c": 5e-4},
    "dims": [4, 3, 4],
    "initial_state": [0, 2, 0],
    "grid": {"t_start": 0.0, "t_end": 120.0, "n_points": 13},
    "n_traj": 4,
    "base_seed": 11,
    "workers": 1,
    "outputs": ["master-equation", "ensemble", "trajectories", "chevron", "sw-verification"],
    "trajectories": [0, 2],
    "chevron": {"n_delta": 3, "delta_over_geff_max": 2.0, "t_end": 60.0,
                "n_points": 7, "dims": [4, 3, 4], "split_dt": 0.05},
    "out_dir": "PLACEHOLDER",
    "split_dt": 0.05,
    "convergence_probe": True,
    "resonance": "explicit",
}


def write_config(tmp_path, **changes) -> Path:
    doc = json.loads(json.dumps(SMALL_DOC))
    doc.update(changes)
    doc["out_dir"] = str(tmp_path / "out")
    path = tmp_path / "config.yaml"
    path.write_text(yaml.safe_dump(doc), encoding="utf-8")
    return path


class TestConfigLoading:
    def test_presets_resolve(self):
        cfg = preset_config("two-photon")
        assert cfg.params.g == 0.05
        assert cfg.params.gamma_b == 5e-4
        assert cfg.params.omega_a == pytest.approx(1.0025)
        assert cfg.initial_state == (0, 2, 0)
        assert cfg.dims.dims == (7, 4, 7)

    def test_unknown_keys_listed(self, tmp_path):
        path = write_config(tmp_path)
        doc = yaml.safe_load(path.read_text())
        doc["n_trajectories"] = 10
        doc["grdi"] = {}
        path.write_text(yaml.safe_dump(doc))
        with pytest.raises(ValueError) as err:
            load_config(path=path)
        assert "grdi" in str(err.value) and "n_trajectories" in str(err.value)

    def test_invalid_physical_values_rejected(self, tmp_path):
        path = write_config(tmp_path)
        doc = yaml.safe_load(path.read_text())
        doc["params"]["gamma_a"] = -1.0
        path.write_text(yaml.safe_dump(doc))
        with pytest.raises(ValueError):
            load_config(path=path)

    def test_override_expressions(self, tmp_path):
        path = write_config(tmp_path)
        cfg = load_config(path=path, override_exprs=["params.g=0.04", "n_traj=7"])
        assert cfg.params.g == 0.04
        assert cfg.n_traj == 7

    def test_initial_state_must_fit_dims(self, tmp_path):
        path = write_config(tmp_path, initial_state=[0, 5, 0])
        with pytest.raises(ValueError):
            load_config(path=path)

    def test_preset_tables_have_reference_rates(self):
        assert PRESETS["two-photon"]["params"]["gamma_a"] == 5e-4
        assert PRESETS["four-photon"]["params"]["g"] == 0.03
        assert PRESETS["four-photon"]["params"]["gamma_a"] == 2e-5
        assert PRESETS["janus"]["params"]["g"] == 0.05
        assert PRESETS["janus"]["params"]["omega_a"] == pytest.approx(0.25 + 1 / 15)
        assert PRESETS["janus"]["initial_state"] == [2, 0, 2]
        assert PRESETS["four-photon"]["initial_state"] == [0, 1, 0]


@pytest.fixture(scope="module")
def run_dir(tmp_path_factory):
    tmp = tmp_path_factory.mktemp("cli-run")
    config = write_config(tmp)
    code = main(["run", "--config", str(config)])
    assert code == 0
    return tmp / "out"


EXPECTED_FILES = [
    "occupations_me.csv",
    "occupations_ensemble.csv",
    "occupations_traj_0.csv",
    "occupations_traj_2.csv",
    "chevron.csv",
    "sw_verification.csv",
    "manifest.json",
]


class TestRun:
    def test_all_outputs_written(self, run_dir):
        for name in EXPECTED_FILES:
            assert (run_dir / name).exists(), name

    def test_files_are_self_describing(self, run_dir):
        text = (run_dir / "occupations_me.csv").read_text()
        assert text.startswith("# trimirror occupations")
        assert "# columns: t [1/omega_b]" in text
        assert "t,n_a,n_b,n_c" in text
        chev = (run_dir / "chevron.csv").read_text()
        assert "E_N [bits]" in chev
        assert "t,delta,E_N" in chev

    def test_trajectory_file_carries_jump_log(self, run_dir):
        text = (run_dir / "occupations_traj_0.csv").read_text()
        assert "# trajectory_index: 0" in text
        # jumps may or may not occur for this seed; the marker format is fixed
        for line in text.splitlines():
            if line.startswith("# jump:"):
                assert "channel=" in line

    def test_manifest_records_run(self, run_dir):
        manifest = json.loads((run_dir / "manifest.json").read_text())
        assert manifest["tool"] == "trimirror"
        assert manifest["config"]["scenario"] == "two-photon"
        assert set(manifest["files"]) == set(EXPECTED_FILES) - {"manifest.json"}
        assert "stages_wallclock_s" in manifest
        assert manifest["convergence_probe"]["converged"] in (True, False)

    def test_rerun_is_byte_identical(self, run_dir, tmp_path):
        config = tmp_path / "config.yaml"
        doc = json.loads(json.dumps(SMALL_DOC))
        doc["out_dir"] = str(tmp_path / "out2")
        config.write_text(yaml.safe_dump(doc))
        assert main(["run", "--config", str(config)]) == 0
        for name in EXPECTED_FILES:
            if name == "manifest.json":
                continue  # timestamps and wall-clock are excluded by contract
            a = (run_dir / name).read_bytes()
            b = (tmp_path / "out2" / name).read_bytes()
            assert a == b, f"{name} differs between reruns"

    def test_manifest_reproduces_run(self, run_dir, tmp_path):
        assert main([
            "run", "--config", str(run_dir / "manifest.json"),
            "--out-dir", str(tmp_path / "out3"),
        ]) == 0
        for name in EXPECTED_FILES:
            if name == "manifest.json":
                continue
            a = (run_dir / name).read_bytes()
            b = (tmp_path / "out3" / name).read_bytes()
            assert a == b, f"{name} differs when rerun from manifest"


class TestOtherCommands:
    def test_presets_prints_yaml(self, capsys):
        assert main(["presets"]) == 0
        out = capsys.readouterr().out
        doc = yaml.safe_load(out)
        assert set(doc) == {"two-photon", "four-photon", "janus"}

    def test_verify_sw_table(self, capsys, tmp_path):
        assert main(["verify-sw", "--out-dir", str(tmp_path)]) == 0
        out = capsys.readouterr().out
        assert "[two-photon]" in out and "[janus-coefficients]" in out
        assert (tmp_path / "sw_verification.csv").exists()

    def test_tune_resonance(self, capsys):
        assert main(["tune-resonance", "--scenario", "two-photon", "--g", "0.05"]) == 0
        out = capsys.readouterr().out
        assert "analytic:   1.00250000" in out
        assert "optimized:" in out

    def test_error_exit_code(self, capsys, tmp_path):
        bad = tmp_path / "bad.yaml"
        bad.write_text("scenario: nonsense\n")
        assert main(["run", "--config", str(bad)]) == 1
        assert "error:" in capsys.readouterr().err
