import json
import math

import numpy as np
import pytest

from steinerstar.cli import main
from steinerstar.geometry import save_points_csv

SQRT2 = math.sqrt(2.0)


@pytest.fixture
def square_csv(tmp_path):
    path = tmp_path / "square.csv"
    save_points_csv(path, np.array([[0, 0], [1, 0], [1, 1], [0, 1]], float))
    return str(path)


def run_cli(capsys, argv):
    code = main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestRatio:
    def test_square_json(self, capsys, square_csv):
        code, out, _ = run_cli(capsys, ["ratio", "--input", square_csv, "--format", "json"])
        assert code == 0
        payload = json.loads(out)
        assert payload["ratio"] == pytest.approx((2.0 + SQRT2) / (2.0 * SQRT2), abs=1e-9)
        assert payload["n"] == 4 and payload["d"] == 2

    def test_square_text(self, capsys, square_csv):
        code, out, _ = run_cli(capsys, ["ratio", "--input", square_csv])
        assert code == 0
        assert "ratio = 1.207107" in out

    def test_json_byte_identical(self, capsys, square_csv):
        _, first, _ = run_cli(capsys, ["ratio", "--input", square_csv, "--format", "json"])
        _, second, _ = run_cli(capsys, ["ratio", "--input", square_csv, "--format", "json"])
        assert first == second


class TestWeber:
    def test_square(self, capsys, square_csv):
        code, out, _ = run_cli(capsys, ["weber", "--input", square_csv, "--format", "json"])
        assert code == 0
        payload = json.loads(out)
        assert payload["converged"]
        assert payload["steiner_length"] == pytest.approx(2.0 * SQRT2, abs=1e-8)
        assert payload["center"] == pytest.approx([0.5, 0.5], abs=1e-8)


class TestMinstar:
    def test_square(self, capsys, square_csv):
        code, out, _ = run_cli(capsys, ["minstar", "--input", square_csv, "--format", "json"])
        assert code == 0
        payload = json.loads(out)
        assert payload["min_index"] == 0
        assert payload["min_length"] == pytest.approx(2.0 + SQRT2, rel=1e-12)
        assert len(payload["lengths"]) == 4


class TestMatching:
    def test_square(self, capsys, square_csv):
        code, out, _ = run_cli(capsys, ["matching", "--input", square_csv, "--format", "json"])
        assert code == 0
        payload = json.loads(out)
        assert payload["pairs"] == [[0, 2], [1, 3]]
        assert payload["total_weight"] == pytest.approx(2.0 * SQRT2, rel=1e-12)
        assert payload["exact"] is True

    def test_odd_input_fails(self, capsys, tmp_path):
        path = tmp_path / "odd.csv"
        save_points_csv(path, np.zeros((3, 2)) + np.arange(3)[:, None])
        code, _, err = run_cli(capsys, ["matching", "--input", str(path)])
        assert code == 1
        assert "even" in err

    def test_approx_flag(self, capsys, tmp_path):
        path = tmp_path / "big.csv"
        save_points_csv(path, np.random.default_rng(1).standard_normal((24, 2)))
        code, out, _ = run_cli(capsys, ["matching", "--input", str(path), "--approx",
                                        "--format", "json"])
        assert code == 0
        assert json.loads(out)["exact"] is False


class TestConstants:
    def test_dim5(self, capsys):
        code, out, _ = run_cli(capsys, ["constants", "--dim", "5"])
        assert code == 0
        assert out.count("1.371429") == 2

    def test_json(self, capsys):
        code, out, _ = run_cli(capsys, ["constants", "--dim", "3", "--format", "json"])
        payload = json.loads(out)
        assert payload["recurrence"] == pytest.approx(4.0 / 3.0, rel=1e-12)
        assert payload["quadrature"] == pytest.approx(4.0 / 3.0, abs=1e-10)
        assert payload["ratio_upper_bound"] == pytest.approx(
            (2.0 / 17.0) * (16.0 - 3.0 * SQRT2), rel=1e-12
        )


class TestTable:
    def test_text_rows(self, capsys):
        code, out, _ = run_cli(capsys, ["table1"])
        assert code == 0
        assert "1.3333" in out and "1.3833" in out
        assert "1.5739" in out and "1.9562" in out

    def test_json(self, capsys):
        code, out, _ = run_cli(capsys, ["table1", "--format", "json"])
        payload = json.loads(out)
        row = next(r for r in payload if r["quantity"] == "star_steiner_ratio" and r["dim"] == 3)
        assert row["lower_4dp"] == 1.3333
        assert row["upper_4dp"] == 1.3833


class TestGsum:
    def test_plane(self, capsys):
        code, out, _ = run_cli(capsys, ["gsum", "--dim", "2", "--n", "6", "--format", "json"])
        payload = json.loads(out)
        assert payload["max_sum"] == pytest.approx(6.0 / math.tan(math.pi / 12.0), rel=1e-12)

    def test_space(self, capsys):
        code, out, _ = run_cli(capsys, ["gsum", "--dim", "3", "--n", "20", "--format", "json"])
        payload = json.loads(out)
        assert payload["lower"] == pytest.approx(221.945, abs=5e-4)
        assert payload["upper"] == pytest.approx(266.167, abs=5e-4)

    def test_higher_dim(self, capsys):
        code, out, _ = run_cli(capsys, ["gsum", "--dim", "5", "--n", "10", "--format", "json"])
        payload = json.loads(out)
        assert payload["upper_estimate"] == pytest.approx(50.0 * 48.0 / 35.0, rel=1e-12)


class TestSearch:
    def test_deterministic_json(self, capsys, tmp_path):
        argv = ["search", "--objective", "sphere_sum", "--n", "4", "--dim", "2",
                "--seed", "3", "--iters", "300", "--restarts", "2", "--format", "json"]
        _, first, _ = run_cli(capsys, argv)
        _, second, _ = run_cli(capsys, argv)
        assert first == second
        payload = json.loads(first)
        assert payload["best_value"] <= payload["reference_value"] + 1e-6

    def test_save_outputs(self, capsys, tmp_path):
        config = tmp_path / "best.csv"
        history = tmp_path / "history.csv"
        code, _, _ = run_cli(capsys, [
            "search", "--objective", "sphere_sum", "--n", "4", "--dim", "2",
            "--seed", "3", "--iters", "200", "--restarts", "1",
            "--save-config", str(config), "--history-csv", str(history),
        ])
        assert code == 0
        from steinerstar.geometry import load_points_csv

        assert load_points_csv(config).shape == (4, 2)
        lines = history.read_text().strip().splitlines()
        assert lines[0] == "iteration,value"
        assert len(lines) >= 2

    def test_env_seed_default(self, capsys, monkeypatch):
        monkeypatch.setenv("STEINER_SEED", "77")
        argv = ["search", "--objective", "sphere_sum", "--n", "4", "--dim", "2",
                "--iters", "100", "--restarts", "1", "--format", "json"]
        _, with_env, _ = run_cli(capsys, argv)
        _, explicit, _ = run_cli(capsys, argv + ["--seed", "77"])
        assert with_env == explicit


class TestVerify:
    def test_fast_suite_passes(self, capsys):
        code, out, _ = run_cli(capsys, ["verify", "--fast"])
        assert code == 0
        lines = [line for line in out.splitlines() if line.startswith(("PASS", "FAIL"))]
        assert len(lines) == 10
        assert all(line.startswith("PASS") for line in lines)


class TestUsage:
    def test_missing_subcommand(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main([])
        assert exc.value.code == 2

    def test_unknown_flag(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["table1", "--bogus"])
        assert exc.value.code == 2

    def test_missing_file(self, capsys):
        code, _, err = run_cli(capsys, ["ratio", "--input", "/nonexistent/points.csv"])
        assert code == 1
        assert "error" in err
