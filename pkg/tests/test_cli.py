import json
import math

import numpy as np
import pytest

from rholab.cli import main, load_scenario, ScenarioError


def write_scenario(path, **overrides):
    base = {
        "dim": 2,
        "rho0": [[[0.5, 0.0], [0.5, 0.0]], [[0.5, 0.0], [0.5, 0.0]]],  # |x+><x+|
        "hamiltonian": [[[0.0, 0.0], [0.0, 0.0]], [[0.0, 0.0], [0.0, 0.0]]],
        "jump_ops": [
            [[[1.0, 0.0], [0.0, 0.0]], [[0.0, 0.0], [-1.0, 0.0]]]  # sigma_z
        ],
        "t_end": 1.0,
        "dt": 0.01,
        "sample_every": 10,
    }
    base.update(overrides)
    path.write_text(json.dumps(base))
    return path


def read_rows(path):
    lines = path.read_text().strip().splitlines()
    header = lines[0].split(",")
    rows = [dict(zip(header, (float(x) for x in line.split(",")))) for line in lines[1:]]
    return header, rows


class TestDemos:
    @pytest.mark.parametrize(
        "name",
        ["nonunique", "chsh", "ghz", "filter", "singlet", "spin1", "nocloning", "nosignal"],
    )
    def test_demo_passes(self, name, capsys):
        assert main(["demo", name]) == 0
        out = capsys.readouterr().out
        assert "overall: PASS" in out
        assert "FAIL" not in out.replace("PASS/FAIL", "")

    def test_chsh_prints_value(self, capsys):
        main(["demo", "chsh"])
        out = capsys.readouterr().out
        assert "2.8284271247461" in out

    def test_filter_prints_quoted_numbers(self, capsys):
        main(["demo", "filter"])
        out = capsys.readouterr().out
        assert "0.25" in out
        assert "0.146" in out

    def test_unknown_demo(self, capsys):
        assert main(["demo", "bogus"]) == 2
        assert "unknown demo" in capsys.readouterr().err


class TestTopLevel:
    def test_version(self, capsys):
        assert main(["--version"]) == 0
        assert "rholab" in capsys.readouterr().out

    def test_usage_error_exit_code(self):
        assert main(["evolve"]) == 2  # missing required arguments

    def test_help(self, capsys):
        assert main(["--help"]) == 0
        assert "demo" in capsys.readouterr().out

    def test_module_entry_point(self):
        import subprocess
        import sys

        result = subprocess.run(
            [sys.executable, "-m", "rholab.cli", "demo", "chsh"],
            capture_output=True,
            text=True,
        )
        assert result.returncode == 0
        assert "overall: PASS" in result.stdout


class TestEvolve:
    def test_dephasing_trajectory(self, tmp_path, capsys):
        scenario = write_scenario(tmp_path / "scenario.json")
        out = tmp_path / "trajectory.csv"
        assert main(["evolve", "--scenario", str(scenario), "--out", str(out)]) == 0
        header, rows = read_rows(out)
        assert header == [
            "t",
            "trace_re",
            "purity",
            "entropy_nats",
            "min_eigenvalue",
            "entropy_production",
        ]
        assert rows[0]["t"] == 0.0
        assert rows[-1]["t"] == pytest.approx(1.0)
        for row in rows:
            assert abs(row["trace_re"] - 1.0) < 1e-8
            assert row["min_eigenvalue"] > -1e-7
            assert row["entropy_production"] >= -1e-12
        entropies = [row["entropy_nats"] for row in rows]
        assert all(b >= a - 1e-8 for a, b in zip(entropies, entropies[1:]))
        assert entropies[-1] > entropies[0] + 0.1
        times = [row["t"] for row in rows]
        assert all(b > a for a, b in zip(times, times[1:]))
        for row in rows:
            assert all(math.isfinite(v) for v in row.values())

    def test_hamiltonian_only_entropy_constant(self, tmp_path):
        h = [[[1.0, 0.0], [0.0, -0.5]], [[0.0, 0.5], [-1.0, 0.0]]]  # hermitian
        scenario = write_scenario(
            tmp_path / "s.json", hamiltonian=h, jump_ops=[], t_end=2.0, dt=0.005
        )
        out = tmp_path / "t.csv"
        assert main(["evolve", "--scenario", str(scenario), "--out", str(out)]) == 0
        _, rows = read_rows(out)
        entropies = [row["entropy_nats"] for row in rows]
        assert max(entropies) - min(entropies) < 1e-8
        for row in rows:
            assert abs(row["trace_re"] - 1.0) < 1e-8

    def test_integration_failure_exit_code(self, tmp_path, capsys):
        scenario = write_scenario(tmp_path / "s.json", t_end=50.0, dt=5.0, sample_every=1)
        out = tmp_path / "t.csv"
        assert main(["evolve", "--scenario", str(scenario), "--out", str(out)]) == 3
        err = capsys.readouterr().err
        assert "integration failure" in err
        assert "t=" in err

    def test_missing_file(self, tmp_path, capsys):
        assert main(["evolve", "--scenario", str(tmp_path / "nope.json"), "--out", "x"]) == 2
        assert "scenario error" in capsys.readouterr().err

    def test_malformed_json(self, tmp_path, capsys):
        bad = tmp_path / "bad.json"
        bad.write_text("{not json")
        assert main(["evolve", "--scenario", str(bad), "--out", "x"]) == 2
        assert "line" in capsys.readouterr().err

    def test_missing_field(self, tmp_path, capsys):
        bad = tmp_path / "bad.json"
        payload = json.loads((write_scenario(tmp_path / "ok.json")).read_text())
        del payload["dt"]
        bad.write_text(json.dumps(payload))
        assert main(["evolve", "--scenario", str(bad), "--out", "x"]) == 2
        assert "dt" in capsys.readouterr().err

    def test_bad_complex_entry(self, tmp_path, capsys):
        payload = json.loads((write_scenario(tmp_path / "ok.json")).read_text())
        payload["rho0"][0][0] = [1.0]  # not an [re, im] pair
        bad = tmp_path / "bad.json"
        bad.write_text(json.dumps(payload))
        assert main(["evolve", "--scenario", str(bad), "--out", "x"]) == 2
        assert "rho0[0][0]" in capsys.readouterr().err

    def test_invalid_density(self, tmp_path, capsys):
        payload = json.loads((write_scenario(tmp_path / "ok.json")).read_text())
        payload["rho0"] = [[[1.0, 0.0], [0.0, 0.0]], [[0.0, 0.0], [1.0, 0.0]]]  # trace 2
        bad = tmp_path / "bad.json"
        bad.write_text(json.dumps(payload))
        assert main(["evolve", "--scenario", str(bad), "--out", "x"]) == 2
        assert "trace" in capsys.readouterr().err

    def test_load_scenario_roundtrip(self, tmp_path):
        scenario = load_scenario(str(write_scenario(tmp_path / "s.json")))
        assert scenario.dim == 2
        assert scenario.sample_every == 10
        assert np.allclose(scenario.jump_ops[0], np.diag([1.0, -1.0]))
        with pytest.raises(ScenarioError):
            load_scenario(str(tmp_path / "missing.json"))


class TestSample:
    def test_aligned_detectors_opposite_outcomes(self, tmp_path):
        out = tmp_path / "events.csv"
        code = main(
            ["sample", "--a", "0,0,1", "--b", "0,0,1", "--n", "100", "--seed", "9",
             "--out", str(out)]
        )
        assert code == 0
        lines = out.read_text().strip().splitlines()
        assert lines[0].startswith("# seed=9")
        assert lines[1] == "a_x,a_y,a_z,b_x,b_y,b_z,outcome_a,outcome_b"
        data = [line.split(",") for line in lines[2:-1]]
        assert len(data) == 100
        for row in data:
            assert int(row[6]) == -int(row[7])
        assert lines[-1].startswith("# summary empirical_correlation=")

    def test_byte_identical_for_same_seed(self, tmp_path):
        args = ["sample", "--a", "0,0,1", "--b", "1,0,0", "--n", "500", "--seed", "42"]
        out1 = tmp_path / "one.csv"
        out2 = tmp_path / "two.csv"
        assert main(args + ["--out", str(out1)]) == 0
        assert main(args + ["--out", str(out2)]) == 0
        assert out1.read_bytes() == out2.read_bytes()

    def test_default_seed_is_42(self, tmp_path):
        out = tmp_path / "events.csv"
        main(["sample", "--a", "0,0,1", "--b", "1,0,0", "--n", "10", "--out", str(out)])
        assert out.read_text().startswith("# seed=42 ")

    def test_non_unit_vector_rejected(self, tmp_path, capsys):
        code = main(
            ["sample", "--a", "0,0,2", "--b", "0,0,1", "--n", "10", "--out",
             str(tmp_path / "x.csv")]
        )
        assert code == 2
        assert "input error" in capsys.readouterr().err

    def test_bad_vector_format(self, tmp_path, capsys):
        code = main(
            ["sample", "--a", "0,0", "--b", "0,0,1", "--n", "10", "--out",
             str(tmp_path / "x.csv")]
        )
        assert code == 2

    def test_summary_matches_analytic(self, tmp_path):
        out = tmp_path / "events.csv"
        n = 100_000
        theta = 0.9
        b = f"{math.sin(theta)},0,{math.cos(theta)}"
        main(["sample", "--a", "0,0,1", "--b", b, "--n", str(n), "--seed", "3",
              "--out", str(out)])
        summary = out.read_text().strip().splitlines()[-1]
        fields = dict(part.split("=") for part in summary[2:].split() if "=" in part)
        analytic = float(fields["analytic_correlation"])
        empirical = float(fields["empirical_correlation"])
        assert analytic == pytest.approx(-math.cos(theta), abs=1e-12)
        sigma = math.sqrt((1 - analytic**2) / n)
        assert abs(empirical - analytic) <= 3 * sigma
