"""End-to-end command tests driven through cli.main with in-process argv."""

import importlib.resources
import json
from pathlib import Path

import numpy as np
import pytest
import yaml

from shoalwave import cli
from shoalwave.fields import FlowState, Grid, save_state
from shoalwave.bathymetry import Flat

from conftest import build_crossing

DATA = Path(__file__).parent / "data"


def stage_bundled_cfg(tmp_path, name):
    root = importlib.resources.files("shoalwave") / "scenarios"
    path = tmp_path / name
    path.write_text((root / name).read_text())
    return str(path)

SMALL_RUN = """\
name: tiny
grid: {x0: -10.0, dx: 0.1, n: 200}
bathymetry: {kind: flat, b0: -1.0}
initial: {kind: gaussian_pulse, center: 0.0, width: 1.0, amplitude: 0.01}
solver: {t_end: 1.0, snapshot_interval: 0.5}
detector: {}
"""


def write_cfg(tmp_path, text, name="scenario.cfg"):
    path = tmp_path / name
    path.write_text(text)
    return str(path)


class TestRun:
    def test_small_run_exits_clean(self, tmp_path, capsys, monkeypatch):
        monkeypatch.setenv(cli.OUTPUT_ENV, str(tmp_path / "out"))
        cfg = write_cfg(tmp_path, SMALL_RUN)
        assert cli.main(["run", cfg]) == 0
        out = capsys.readouterr().out
        assert "run tiny:" in out
        manifest = json.loads((tmp_path / "out" / "tiny" / "run.json").read_text())
        assert manifest["run_id"] == "tiny"
        assert len(manifest["snapshot_files"]) == 3
        for name in manifest["snapshot_files"]:
            assert (tmp_path / "out" / "tiny" / name).exists()

    def test_runs_are_deterministic(self, tmp_path, monkeypatch):
        cfg = write_cfg(tmp_path, SMALL_RUN)
        monkeypatch.setenv(cli.OUTPUT_ENV, str(tmp_path / "a"))
        assert cli.main(["run", cfg]) == 0
        monkeypatch.setenv(cli.OUTPUT_ENV, str(tmp_path / "b"))
        assert cli.main(["run", cfg]) == 0
        for name in ("run.json", "events.jsonl"):
            a = (tmp_path / "a" / "tiny" / name).read_bytes()
            b = (tmp_path / "b" / "tiny" / name).read_bytes()
            assert a == b
        snaps = sorted((tmp_path / "a" / "tiny").glob("snap_*.csv"))
        assert snaps
        for snap in snaps:
            twin = tmp_path / "b" / "tiny" / snap.name
            assert snap.read_bytes() == twin.read_bytes()

    def test_run_id_and_output_dir_flags(self, tmp_path):
        cfg = write_cfg(tmp_path, SMALL_RUN)
        code = cli.main(
            ["run", cfg, "--output-dir", str(tmp_path / "o"), "--run-id", "attempt-7"]
        )
        assert code == 0
        manifest = json.loads((tmp_path / "o" / "tiny" / "run.json").read_text())
        assert manifest["run_id"] == "attempt-7"

    def test_t_end_override_shortens_run(self, tmp_path, monkeypatch):
        monkeypatch.setenv(cli.OUTPUT_ENV, str(tmp_path / "out"))
        cfg = write_cfg(tmp_path, SMALL_RUN)
        assert cli.main(["run", cfg, "--t-end", "0.2"]) == 0
        manifest = json.loads((tmp_path / "out" / "tiny" / "run.json").read_text())
        assert manifest["snapshot_times"][-1] == pytest.approx(0.2, abs=1e-9)

    def test_jobs_flag_runs_batch(self, tmp_path, monkeypatch):
        monkeypatch.setenv(cli.OUTPUT_ENV, str(tmp_path / "out"))
        cfg_a = write_cfg(tmp_path, SMALL_RUN, "a.cfg")
        cfg_b = write_cfg(
            tmp_path, SMALL_RUN.replace("name: tiny", "name: tiny2"), "b.cfg"
        )
        assert cli.main(["run", cfg_a, cfg_b, "--jobs", "2"]) == 0
        assert (tmp_path / "out" / "tiny" / "run.json").exists()
        assert (tmp_path / "out" / "tiny2" / "run.json").exists()

    def test_batch_returns_worst_code(self, tmp_path, monkeypatch):
        monkeypatch.setenv(cli.OUTPUT_ENV, str(tmp_path / "out"))
        good = write_cfg(tmp_path, SMALL_RUN, "good.cfg")
        bad = write_cfg(tmp_path, "name: broken\n", "bad.cfg")
        assert cli.main(["run", good, bad]) == 1

    def test_missing_file_exits_config(self, tmp_path, capsys):
        assert cli.main(["run", str(tmp_path / "nope.cfg")]) == 1
        assert "config error" in capsys.readouterr().out

    def test_bundled_lake_scenario_stays_quiet(self, tmp_path, monkeypatch):
        monkeypatch.setenv(cli.OUTPUT_ENV, str(tmp_path / "out"))
        cfg = stage_bundled_cfg(tmp_path, "lake_at_rest.cfg")
        assert cli.main(["run", cfg]) == 0
        run_dir = tmp_path / "out" / "lake_at_rest"
        manifest = json.loads((run_dir / "run.json").read_text())
        assert manifest["n_events"] == 0
        assert (run_dir / "events.jsonl").read_text() == ""

    def test_bundled_shoaling_scenario_logs_rush_events(self, tmp_path, monkeypatch):
        # Full reference run: the pulse climbs the shelf, reflects off the
        # wall, and the event log must carry at least one shallow inland
        # rush with a complete record per line.
        monkeypatch.setenv(cli.OUTPUT_ENV, str(tmp_path / "out"))
        cfg = stage_bundled_cfg(tmp_path, "shoaling_pulse.cfg")
        assert cli.main(["run", cfg]) == 0
        log = tmp_path / "out" / "shoaling_pulse" / "events.jsonl"
        records = [json.loads(line) for line in log.read_text().splitlines()]
        assert records
        assert any(
            r["classification"] == "InlandRush" and r["depth_regime"] == "Shallow"
            for r in records
        )
        for r in records:
            assert set(r) >= {"t", "x_star", "classification", "side", "run_id"}


class TestRunFailures:
    @pytest.mark.parametrize(
        "mangle",
        [
            lambda d: d.pop("grid"),
            lambda d: d.pop("solver"),
            lambda d: d["grid"].update(n=-5),
            lambda d: d["grid"].update(extra=1),
            lambda d: d.update(mystery={}),
            lambda d: d["solver"].update(t_end=-3.0),
            lambda d: d["solver"].update(boundary="open"),
            lambda d: d["bathymetry"].update(kind="trench"),
            lambda d: d["initial"].update(kind="dam_break"),
            lambda d: d["detector"].update(window=3),
            lambda d: d["detector"].update(alert_eps_r=-1.0),
            lambda d: d["detector"].update(eps_px=0.0),
        ],
    )
    def test_bad_documents_exit_config(self, tmp_path, mangle):
        doc = yaml.safe_load(SMALL_RUN)
        mangle(doc)
        cfg = write_cfg(tmp_path, yaml.safe_dump(doc))
        assert cli.main(["run", cfg]) == 1

    def test_unparseable_yaml_exits_config(self, tmp_path, capsys):
        cfg = write_cfg(tmp_path, "name: [unclosed\n")
        assert cli.main(["run", cfg]) == 1
        assert "config error" in capsys.readouterr().out

    def test_dry_pulse_exits_near_dry(self, tmp_path, capsys):
        doc = yaml.safe_load(SMALL_RUN)
        doc["bathymetry"]["b0"] = -0.5
        doc["initial"]["amplitude"] = -0.6
        cfg = write_cfg(tmp_path, yaml.safe_dump(doc))
        assert cli.main(["run", cfg]) == 2
        assert "near-dry abort" in capsys.readouterr().out

    def test_dry_rest_state_exits_near_dry(self, tmp_path, monkeypatch):
        monkeypatch.setenv(cli.OUTPUT_ENV, str(tmp_path / "out"))
        doc = yaml.safe_load(SMALL_RUN)
        doc["bathymetry"]["b0"] = 0.5
        doc["initial"] = {"kind": "lake_at_rest"}
        cfg = write_cfg(tmp_path, yaml.safe_dump(doc))
        assert cli.main(["run", cfg]) == 2

    def test_nonfinite_initial_file_exits_blow_up(self, tmp_path, capsys, monkeypatch):
        monkeypatch.setenv(cli.OUTPUT_ENV, str(tmp_path / "out"))
        g = Grid(-10.0, 0.1, 200)
        b = Flat(-1.0)
        u = np.zeros(200)
        u[100] = np.nan
        state_path = tmp_path / "seed.csv"
        save_state(FlowState(0.0, np.zeros(200), u), b, g, state_path)
        doc = yaml.safe_load(SMALL_RUN)
        doc["initial"] = {"kind": "from_file", "path": str(state_path)}
        cfg = write_cfg(tmp_path, yaml.safe_dump(doc))
        assert cli.main(["run", cfg]) == 3
        assert "numeric blow-up" in capsys.readouterr().out


class TestConfigRoundTrip:
    def test_parse_serialize_parse_is_identity(self, tmp_path):
        cfg = cli.load_config(write_cfg(tmp_path, SMALL_RUN))
        text = cli.serialize_config(cfg)
        again = cli.ScenarioConfig.from_doc(yaml.safe_load(text))
        assert again.to_doc() == cfg.to_doc()
        assert cli.serialize_config(again) == text

    def test_bundled_scenarios_parse_and_build(self):
        root = importlib.resources.files("shoalwave") / "scenarios"
        names = sorted(p.name for p in root.iterdir() if p.name.endswith(".cfg"))
        assert names == ["lake_at_rest.cfg", "shoaling_pulse.cfg"]
        for name in names:
            cfg = cli.ScenarioConfig.from_doc(
                yaml.safe_load((root / name).read_text())
            )
            grid = cfg.build_grid()
            bathy = cfg.build_bathymetry()
            cfg.build_initial(grid, bathy)
            cfg.build_solver_config()
            cfg.build_detector_config()


class TestDetect:
    def test_alert_state_exits_alert(self, capsys):
        code = cli.main(["detect", str(DATA / "shoaling_alert_state.csv")])
        assert code == 4
        out = capsys.readouterr().out
        assert "ALERT: shallow-regime rush event present" in out
        assert "InlandRush" in out

    def test_alert_state_with_explicit_bathymetry(self):
        code = cli.main(
            [
                "detect",
                str(DATA / "shoaling_alert_state.csv"),
                "--bathy",
                "tanh_safe:h=0.02,K=1.99",
            ]
        )
        assert code == 4

    def test_rest_state_is_quiet(self, tmp_path, capsys):
        g = Grid(-20.0, 0.1, 400)
        b = Flat(-1.0)
        path = tmp_path / "rest.csv"
        save_state(FlowState(0.0, np.zeros(400), np.zeros(400)), b, g, path)
        assert cli.main(["detect", str(path)]) == 0
        out = capsys.readouterr().out
        assert "critical points: 0" in out
        assert "alert nodes" in out

    def test_mean_depth_adds_deep_sea_line(self, tmp_path, capsys):
        g = Grid(-20.0, 0.1, 400)
        b = Flat(-3900.0)
        path = tmp_path / "deep.csv"
        save_state(FlowState(0.0, np.full(400, 7.0), np.zeros(400)), b, g, path)
        assert cli.main(["detect", str(path), "--mean-depth", "0.0"]) == 0
        out = capsys.readouterr().out
        assert "deep-sea: max sound speed=" in out
        ms = float(out.split("max sound speed=")[1].split()[0])
        assert ms == pytest.approx(np.sqrt(3907.0), rel=1e-4)

    def test_missing_file_exits_config(self, tmp_path, capsys):
        assert cli.main(["detect", str(tmp_path / "nope.csv")]) == 1
        assert "cannot read state file" in capsys.readouterr().out

    def test_bad_bathy_spec_exits_config(self, capsys):
        state = str(DATA / "shoaling_alert_state.csv")
        assert cli.main(["detect", state, "--bathy", "volcano:h=1"]) == 1
        assert "bad bathymetry spec" in capsys.readouterr().out

    def test_gamma_ref_override_downgrades_alert(self):
        # A tiny reference depth makes every event look deep relative to it,
        # so the shallow-rush alert does not fire.
        state = str(DATA / "shoaling_alert_state.csv")
        assert cli.main(["detect", state, "--gamma-ref", "0.01"]) == 0

    def test_deep_crossing_is_reported_but_not_alerting(self, tmp_path, capsys):
        # Same local wave shape as the alert fixture, but the column at the
        # crossing is as thick as anywhere on the snapshot, so the event is
        # downgraded and the exit stays clean.
        grid, state, bathy = build_crossing(gamma0=1.5)
        path = tmp_path / "deep_crossing.csv"
        save_state(state, bathy, grid, path)
        assert cli.main(["detect", str(path)]) == 0
        out = capsys.readouterr().out
        assert "critical points: 1" in out
        assert "InlandRush" in out
        assert "[deep water: severity downgraded]" in out
        assert "ALERT" not in out


class TestVerifyAnalytic:
    def test_first_order_converges(self, capsys):
        code = cli.main(["verify-analytic", "--n", "200", "--t-end", "0.3"])
        assert code == 0
        out = capsys.readouterr().out
        assert "closed-form residual max" in out
        order = float(out.split("observed order: ")[1].split()[0])
        assert order >= 0.9

    def test_default_study_reports_sane_order(self, capsys):
        code = cli.main(["verify-analytic"])
        assert code == 0
        out = capsys.readouterr().out
        order = float(out.split("observed order: ")[1].split()[0])
        assert 0.9 <= order <= 2.2

    def test_flat_bottom_is_exact(self, capsys):
        code = cli.main(["verify-analytic", "--b1", "0", "--n", "100"])
        assert code == 0
        assert "errors at rounding level: exact" in capsys.readouterr().out

    def test_second_order_is_exact_on_family(self, capsys):
        code = cli.main(
            ["verify-analytic", "--n", "100", "--t-end", "0.3", "--second-order"]
        )
        assert code == 0
        assert "errors at rounding level: exact" in capsys.readouterr().out

    def test_broken_flux_fails_study(self, capsys):
        code = cli.main(
            [
                "verify-analytic",
                "--n",
                "100",
                "--t-end",
                "0.3",
                "--flux-perturbation",
                "0.05",
            ]
        )
        assert code == 1
        out = capsys.readouterr().out
        order = float(out.split("observed order: ")[1].split()[0])
        assert order < 0.9

    def test_invalid_family_exits_config(self, capsys):
        assert cli.main(["verify-analytic", "--x1", "2.0", "--x2", "-2.0"]) == 1
        assert "invalid solution family" in capsys.readouterr().out


class TestSmallTools:
    def test_classify_degenerate_prints_label(self, capsys):
        assert cli.main(["classify-degenerate", "1", "2", "0.5", "0.5"]) == 0
        assert capsys.readouterr().out.strip() == "OrderSqrtDepth"

    def test_classify_degenerate_signed_infinity(self, capsys):
        assert cli.main(["classify-degenerate", "2", "2", "0.5", "0.5"]) == 0
        assert capsys.readouterr().out.strip() == "SignedInfinity"

    def test_classify_degenerate_equal_linear_terms(self, capsys):
        assert cli.main(["classify-degenerate", "1", "1", "2", "2"]) == 0
        assert capsys.readouterr().out.strip() == "SignedInfinity"

    def test_classify_degenerate_rejects_flat_bed(self, capsys):
        assert cli.main(["classify-degenerate", "1", "1", "0", "1"]) == 1
        assert "invalid degenerate spec" in capsys.readouterr().out

    def test_nondim_reports_shallow_ocean(self, capsys):
        code = cli.main(["nondim", "800000", "3900", "9.8", "7"])
        assert code == 0
        rep = json.loads(capsys.readouterr().out)
        assert rep["is_shallow"] is True
        assert rep["delta2"] == pytest.approx(2.38e-5, abs=1e-7)
        assert rep["epsilon"] == pytest.approx(1.79e-3, abs=1e-5)

    def test_nondim_scaled_down_basin(self, capsys):
        assert cli.main(["nondim", "8000", "39", "9.8", "7"]) == 0
        rep = json.loads(capsys.readouterr().out)
        assert rep["is_shallow"] is True
        assert rep["delta2"] == pytest.approx(2.3765625e-5)

    def test_nondim_rejects_bad_input(self, capsys):
        assert cli.main(["nondim", "-1", "1", "9.8", "0.1"]) == 1
        assert "invalid parameters" in capsys.readouterr().out

    def test_speed_formats_both_units(self, capsys):
        assert cli.main(["speed", "4282", "9.8"]) == 0
        assert capsys.readouterr().out.strip() == "204.85 m/s = 737.5 km/h"

    def test_speed_default_gravity(self, capsys):
        assert cli.main(["speed", "1"]) == 0
        assert capsys.readouterr().out.startswith("3.13 m/s")

    def test_speed_rejects_nonpositive_depth(self, capsys):
        assert cli.main(["speed", "-4"]) == 1
        assert "invalid parameters" in capsys.readouterr().out
