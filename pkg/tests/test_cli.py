"""End-to-end runs of the CLI commands."""

import csv
import json

import numpy as np
import pytest

from noncompact_kernels.cli import main


def write_config(tmp_path, **fields):
    path = tmp_path / "config.json"
    path.write_text(json.dumps(fields))
    return path


def read_output(path):
    lines = path.read_text().splitlines()
    header = json.loads(lines[0][2:])
    body = [line for line in lines[1:] if not line.startswith("#")]
    footer = dict(line[2:].split(": ", 1) for line in lines[1:] if line.startswith("#"))
    rows = list(csv.DictReader(body))
    return header, rows, footer


class TestKernelEval:
    def test_base_point_row_and_oracle(self, tmp_path):
        config = write_config(tmp_path, num_features=3000, distances=[0.0, 1.0], kernel={"kappa": 1.0})
        out = tmp_path / "k.csv"
        assert main(["kernel-eval", "--config", str(config), "--space", "h3", "--seed", "4", "--out", str(out)]) == 0
        header, rows, _ = read_output(out)
        assert header["command"] == "kernel-eval"
        assert header["config"]["seed"] == 4
        assert header["config"]["space"] == "h3"
        assert header["rng"]["bit_generator"] == "Philox"
        assert float(rows[0]["k_hat"]) == 1.0
        assert float(rows[0]["stderr"]) == 0.0
        row = rows[1]
        assert float(row["distance"]) == pytest.approx(1.0)
        assert abs(float(row["k_hat"]) - float(row["oracle"])) <= 5 * float(row["stderr"]) + 1e-3

    def test_same_seed_same_bytes(self, tmp_path):
        config = write_config(tmp_path, num_features=200, num_random_points=3)
        first, second = tmp_path / "a.csv", tmp_path / "b.csv"
        for out in (first, second):
            assert main(["kernel-eval", "--config", str(config), "--space", "spd2", "--out", str(out)]) == 0
        assert first.read_bytes() == second.read_bytes()

    def test_echoed_config_reruns_identically(self, tmp_path):
        first = tmp_path / "first.csv"
        assert main(["kernel-eval", "--space", "h2", "--seed", "17", "--out", str(first)]) == 0
        header, _, _ = read_output(first)
        echoed = tmp_path / "echoed.json"
        echoed.write_text(json.dumps(header["config"]))
        second = tmp_path / "second.csv"
        assert main(["kernel-eval", "--config", str(echoed), "--out", str(second)]) == 0
        assert first.read_bytes() == second.read_bytes()

    def test_points_given_as_documents(self, tmp_path):
        point = {"space": "hyperbolic", "n": 2, "v": [float(np.cosh(1.0)), float(np.sinh(1.0)), 0.0]}
        config = write_config(tmp_path, space="h2", num_features=100, points=[point])
        out = tmp_path / "k.csv"
        assert main(["kernel-eval", "--config", str(config), "--out", str(out)]) == 0
        header, rows, _ = read_output(out)
        assert header["config"]["points"] == [point]
        assert float(rows[0]["distance"]) == pytest.approx(1.0)

    def test_foreign_point_document_fails(self, tmp_path):
        point = {"space": "spd", "d": 2, "S": [[1.0, 0.0], [0.0, 1.0]]}
        config = write_config(tmp_path, space="h2", points=[point])
        assert main(["kernel-eval", "--config", str(config)]) == 1

    def test_malformed_config_fails(self, tmp_path):
        config = write_config(tmp_path, num_features=-3)
        assert main(["kernel-eval", "--config", str(config)]) == 1
        assert main(["kernel-eval", "--space", "torus"]) == 1


class TestOtherCommands:
    def test_sample_prior(self, tmp_path):
        config = write_config(tmp_path, num_features=100, num_paths=3, kernel={"nu": 1.5, "kappa": 1.0})
        out = tmp_path / "prior.csv"
        assert main(["sample-prior", "--config", str(config), "--out", str(out)]) == 0
        _, rows, _ = read_output(out)
        assert len(rows) == 3 * 4
        assert {row["path"] for row in rows} == {"0", "1", "2"}

    def test_gp_posterior_without_data_is_prior(self, tmp_path):
        config = write_config(tmp_path, num_features=100, posterior_samples=2, kernel={"kappa": 1.0, "sigma2": 2.0})
        out = tmp_path / "post.csv"
        assert main(["gp-posterior", "--config", str(config), "--space", "h3", "--out", str(out)]) == 0
        _, rows, _ = read_output(out)
        assert [float(row["mean"]) for row in rows] == [0.0] * 4
        assert float(rows[0]["std"]) == pytest.approx(np.sqrt(2.0))
        assert "sample_1" in rows[0]

    def test_gp_posterior_with_data(self, tmp_path):
        data = tmp_path / "data.csv"
        data.write_text("v0,v1,v2,y,noise\n1.0,0.0,0.0,0.7,1e-6\n")
        config = write_config(tmp_path, num_features=200, dataset=str(data), distances=[0.0])
        out = tmp_path / "post.csv"
        assert main(["gp-posterior", "--config", str(config), "--out", str(out)]) == 0
        _, rows, _ = read_output(out)
        assert float(rows[0]["mean"]) == pytest.approx(0.7, abs=1e-3)

    def test_accept_rate_odd_dimension(self, tmp_path):
        config = write_config(tmp_path, trials=500, kappas=[0.1, 10.0])
        out = tmp_path / "rate.csv"
        assert main(["accept-rate", "--config", str(config), "--space", "h5", "--out", str(out)]) == 0
        _, rows, _ = read_output(out)
        assert [float(row["rate"]) for row in rows] == [1.0, 1.0]

    def test_range_curve(self, tmp_path):
        config = write_config(tmp_path, num_features=500, limiting_features=2000, kappas=[0.5, 5.0])
        out = tmp_path / "range.csv"
        assert main(["range-curve", "--config", str(config), "--space", "spd2", "--out", str(out)]) == 0
        _, rows, _ = read_output(out)
        assert len(rows) == 2
        assert float(rows[0]["limiting"]) == float(rows[1]["limiting"])

    def test_spectral_sample(self, tmp_path):
        config = write_config(tmp_path, spectral_samples=50)
        out = tmp_path / "lambda.csv"
        assert main(["spectral-sample", "--config", str(config), "--space", "spd3", "--out", str(out)]) == 0
        _, rows, footer = read_output(out)
        assert len(rows) == 50
        assert list(rows[0]) == ["lambda_0", "lambda_1", "lambda_2"]
        assert int(footer["accepted"]) == 50
        assert int(footer["proposed"]) >= 50


@pytest.mark.slow
class TestErrorCurve:
    def test_monte_carlo_rate(self, tmp_path):
        config = write_config(
            tmp_path,
            feature_counts=[64, 256, 1024, 4096],
            num_seeds=20,
            reference_distance=1.0,
            kernel={"kappa": 1.0},
        )
        out = tmp_path / "error.csv"
        assert main(["error-curve", "--config", str(config), "--space", "h3", "--out", str(out)]) == 0
        _, rows, footer = read_output(out)
        assert {"q05", "q25", "q75", "q95"} <= set(rows[0])
        assert float(rows[-1]["relative_error"]) < float(rows[0]["relative_error"])
        assert -0.65 <= float(footer["slope"]) <= -0.35
