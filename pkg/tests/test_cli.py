import json
import math

import pytest

from spinzero.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def write_triangle(tmp_path):
    path = tmp_path / "triangle.txt"
    path.write_text("3 3\n0 1\n1 2\n0 2\n")
    return str(path)


class TestThresholds:
    def test_golden_row(self, capsys):
        code, out, _ = run(
            capsys, "thresholds", "--beta", "2", "--gamma-min", "1",
            "--gamma-max", "1", "--step", "1",
        )
        assert code == 0
        lines = out.strip().splitlines()
        assert lines[0] == "gamma,lambda_mcmc,d_c,lambda_c,d_star,lambda_star"
        row = [float(x) for x in lines[1].split(",")]
        assert row[1] == pytest.approx(2.0)
        assert row[3] == pytest.approx(10.66066, abs=1e-4)
        assert row[5] == pytest.approx(4.0, abs=1e-12)

    def test_ordering_across_sweep(self, capsys):
        code, out, _ = run(
            capsys, "thresholds", "--beta", "2", "--gamma-min", "0.6",
            "--gamma-max", "2.0", "--step", "0.1",
        )
        assert code == 0
        for line in out.strip().splitlines()[1:]:
            row = [float(x) for x in line.split(",")]
            assert row[1] <= row[5] + 1e-9

    def test_skips_invalid_gamma(self, capsys):
        code, out, err = run(
            capsys, "thresholds", "--beta", "2", "--gamma-min", "0.2",
            "--gamma-max", "0.6", "--step", "0.2",
        )
        assert code == 0
        assert "skipping" in err

    def test_deterministic_output(self, capsys, tmp_path):
        a = tmp_path / "a.csv"
        b = tmp_path / "b.csv"
        for path in (a, b):
            run(capsys, "thresholds", "--beta", "3", "--gamma-min", "0.5",
                "--gamma-max", "2.5", "--step", "0.25", "--out", str(path))
        assert a.read_bytes() == b.read_bytes()


class TestRegions:
    def test_intercept_visible_in_cloud(self, capsys):
        code, out, _ = run(
            capsys, "regions", "--beta", "3", "--gamma", "1.3333333333333333",
            "--d-list", "3", "--samples", "360",
        )
        assert code == 0
        doc = json.loads(out)
        assert doc["lambda_star"] == pytest.approx(3.375)
        assert doc["d_star"] == pytest.approx(3.0)
        pts = doc["clouds"]["3"]
        on_axis = [abs(complex(x, y)) for x, y in pts if abs(y) < 1e-9 and x > 0]
        assert min(on_axis) == pytest.approx(3.375, abs=1e-3)


class TestVerify:
    def test_small_sweep_exit_zero(self, capsys):
        code, out, _ = run(
            capsys, "verify", "--count", "2", "--n-max", "6", "--deg-max", "3",
            "--params", "3:1.3333333333333333", "--seed", "5",
        )
        assert code == 0
        doc = json.loads(out)
        assert doc["passed"] == doc["total"] == 2
        assert doc["failures"] == []


class TestApprox:
    def test_triangle_json(self, capsys, tmp_path):
        graph = write_triangle(tmp_path)
        code, out, _ = run(
            capsys, "approx", "--graph", graph, "--beta", "3",
            "--gamma", "1.3333333333333333", "--lambda", "1.6875",
            "--epsilon", "0.01",
        )
        assert code == 0
        doc = json.loads(out)
        assert doc["relative_error"] <= 0.01
        assert doc["value"] == pytest.approx(doc["exact"], rel=0.01)
        assert doc["tail_bound"] <= 0.005

    def test_field_file(self, capsys, tmp_path):
        graph = write_triangle(tmp_path)
        fields = tmp_path / "fields.txt"
        fields.write_text("0.5\n1.0\n1.5\n")
        code, out, _ = run(
            capsys, "approx", "--graph", graph, "--beta", "3",
            "--gamma", "1.3333333333333333", "--fields", str(fields),
            "--epsilon", "0.01",
        )
        assert code == 0
        doc = json.loads(out)
        assert doc["relative_error"] <= 0.01

    def test_out_of_regime_exit_two(self, capsys, tmp_path):
        graph = write_triangle(tmp_path)
        code, _, err = run(
            capsys, "approx", "--graph", graph, "--beta", "3",
            "--gamma", "1.3333333333333333", "--lambda", "100",
        )
        assert code == 2
        assert "error:" in err

    def test_missing_graph_exit_two(self, capsys):
        code, _, err = run(
            capsys, "approx", "--graph", "/nonexistent/g.txt", "--beta", "3",
            "--gamma", "1.3333333333333333",
        )
        assert code == 2


class TestOracle:
    def test_gaps_small(self, capsys):
        code, out, _ = run(
            capsys, "oracle", "--beta", "3", "--gamma", "1.3333333333333333",
            "--d-max", "4", "--restarts", "24",
        )
        assert code == 0
        lines = out.strip().splitlines()
        assert lines[0] == "d,closed_form,oracle,relative_gap"
        for line in lines[1:]:
            gap = float(line.split(",")[3])
            assert gap <= 1e-5

    def test_infinite_rows_marked(self, capsys):
        # disk case: d = 2 product region misses the positive real axis
        code, out, _ = run(
            capsys, "oracle", "--beta", "4", "--gamma", "0.5",
            "--d-max", "2", "--restarts", "8",
        )
        assert code == 0
        assert out.strip().splitlines()[1].startswith("2,inf,inf")


class TestConfig:
    def test_config_supplies_defaults(self, capsys, tmp_path):
        conf = tmp_path / "conf.toml"
        conf.write_text(
            '[thresholds]\nbeta = 2.0\n"gamma-min" = 1.0\n'
            '"gamma-max" = 1.0\nstep = 1.0\n'
        )
        code, out, _ = run(capsys, "--config", str(conf), "thresholds")
        assert code == 0
        row = [float(x) for x in out.strip().splitlines()[1].split(",")]
        assert row[0] == pytest.approx(1.0)
        assert row[5] == pytest.approx(4.0)

    def test_flags_beat_config(self, capsys, tmp_path):
        conf = tmp_path / "conf.toml"
        conf.write_text('[thresholds]\nbeta = 2.0\n')
        code, out, _ = run(
            capsys, "--config", str(conf), "thresholds", "--beta", "3",
            "--gamma-min", "1", "--gamma-max", "1", "--step", "1",
        )
        assert code == 0
        row = [float(x) for x in out.strip().splitlines()[1].split(",")]
        # beta = 3, gamma = 1: lambda_mcmc = beta/gamma = 3
        assert row[1] == pytest.approx(3.0)

    def test_unknown_config_key_exit_two(self, capsys, tmp_path):
        conf = tmp_path / "conf.toml"
        conf.write_text('[thresholds]\nbogus = 1\n')
        code, _, err = run(capsys, "--config", str(conf), "thresholds")
        assert code == 2
        assert "bogus" in err


class TestOutFiles:
    def test_csv_written_to_file(self, capsys, tmp_path):
        out = tmp_path / "sweep.csv"
        code, stdout, _ = run(
            capsys, "thresholds", "--beta", "2", "--gamma-min", "1",
            "--gamma-max", "1", "--step", "1", "--out", str(out),
        )
        assert code == 0
        assert stdout == ""
        assert out.read_text().startswith("gamma,")
