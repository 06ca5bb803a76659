"""End-to-end CLI runs: schemas, determinism, exit codes, verdicts."""

import json

import numpy as np
import pytest
from scipy import stats

from ensemblelab import cli
from ensemblelab import ldp


def run(args):
    return cli.main([str(a) for a in args])


def write_config(path, obj):
    path.write_text(json.dumps(obj))
    return path


class TestCurveCommand:
    def test_exact_inverse_k_csv(self, tmp_path):
        cfg = write_config(tmp_path / "c.json", {
            "loss": {"loss": "squared", "y": 0.0},
            "distribution": {"family": "gaussian", "mean": 0.0, "var": 1.0},
            "kmax": 10, "method": "exact",
        })
        assert run(["curve", "--config", cfg, "--out", tmp_path / "o"]) == 0
        lines = (tmp_path / "o" / "curve.csv").read_text().strip().splitlines()
        assert lines[0] == "K,value,std_err,method"
        vals = np.array([float(l.split(",")[1]) for l in lines[1:]])
        np.testing.assert_allclose(vals, 1.0 / np.arange(1, 11), rtol=1e-14)
        summary = json.loads((tmp_path / "o" / "summary.json").read_text())
        assert summary["curve"]["monotonicity"]["verdict"] == "decreasing"

    def test_byte_identical_reruns(self, tmp_path):
        cfg = write_config(tmp_path / "c.json", {
            "loss": {"loss": "cross_entropy", "true_class": 0, "n_classes": 2},
            "distribution": {"family": "affine",
                             "base": {"family": "finite_lattice", "offset": 0.2,
                                      "span": 0.15, "masses": [0.25, 0.25, 0.25, 0.25]},
                             "A": [[1.0], [-1.0]], "b": [0.0, 1.0]},
            "kmax": 8, "reps": 5000, "method": "mc", "seed": 7,
        })
        assert run(["curve", "--config", cfg, "--out", tmp_path / "a", "--svg"]) == 0
        assert run(["curve", "--config", cfg, "--out", tmp_path / "b", "--svg"]) == 0
        for name in ("curve.csv", "summary.json", "plot.svg"):
            assert (tmp_path / "a" / name).read_bytes() == (tmp_path / "b" / name).read_bytes()

    def test_unknown_field_rejected(self, tmp_path):
        cfg = write_config(tmp_path / "c.json", {"loss": {"loss": "squared"}, "bogus": 1})
        assert run(["curve", "--config", cfg, "--out", tmp_path / "o"]) == cli.EXIT_CONFIG

    def test_numeric_error_distinct_exit_code(self, tmp_path):
        cfg = write_config(tmp_path / "c.json", {
            "loss": {"loss": "spherical"},
            "distribution": {"family": "cauchy"},
            "method": "exact",
        })
        assert run(["curve", "--config", cfg, "--out", tmp_path / "o"]) == cli.EXIT_NUMERIC

    def test_flag_overrides_config(self, tmp_path):
        cfg = write_config(tmp_path / "c.json", {
            "loss": {"loss": "squared"},
            "distribution": {"family": "gaussian"},
            "kmax": 3, "method": "exact",
        })
        assert run(["curve", "--config", cfg, "--kmax", 6, "--out", tmp_path / "o"]) == 0
        lines = (tmp_path / "o" / "curve.csv").read_text().strip().splitlines()
        assert len(lines) == 7


class TestTailsCommand:
    def test_schema_and_ratio_column(self, tmp_path):
        lat = ldp.mass_restored_lattice(0.55, 0.1)
        cfg = write_config(tmp_path / "t.json", {
            "distribution": lat.descriptor(), "epsilon": 0.1, "nmax": 30,
        })
        assert run(["tails", "--config", cfg, "--out", tmp_path / "o"]) == 0
        lines = (tmp_path / "o" / "tails.csv").read_text().strip().splitlines()
        assert lines[0] == "n,exact,asymptote,ratio"
        n1 = lines[1].split(",")
        assert float(n1[1]) == pytest.approx(2 / 3, abs=1e-12)
        assert float(n1[3]) == pytest.approx(float(n1[2]) / float(n1[1]), rel=1e-12)
        summary = json.loads((tmp_path / "o" / "summary.json").read_text())
        assert summary["variant"] == "lattice_geq"
        assert summary["assumptions"]["verdict"] == "eventually_decreasing"

    def test_gaussian_nonlattice(self, tmp_path):
        cfg = write_config(tmp_path / "t.json", {
            "distribution": {"family": "gaussian", "mean": 0.0, "var": 1.0},
            "epsilon": 0.5, "nmax": 20,
        })
        assert run(["tails", "--config", cfg, "--out", tmp_path / "o"]) == 0
        summary = json.loads((tmp_path / "o" / "summary.json").read_text())
        assert summary["variant"] == "nonlattice"
        assert summary["tilt"]["h"] == pytest.approx(0.5, abs=1e-10)

    def test_cauchy_has_no_asymptote(self, tmp_path):
        cfg = write_config(tmp_path / "t.json", {
            "distribution": {"family": "cauchy"}, "epsilon": 1.0, "nmax": 10,
        })
        assert run(["tails", "--config", cfg, "--out", tmp_path / "o"]) == 0
        summary = json.loads((tmp_path / "o" / "summary.json").read_text())
        assert summary["tilt"] is None
        assert summary["sequence_verdict"] == "flat"


class TestMarginsCommand:
    def test_correct_model_summary(self, tmp_path):
        cfg = write_config(tmp_path / "m.json", {
            "scores": {"mean": [0.75, 0.25], "cov": [[1.0, 0.5], [0.5, 1.0]]},
            "true_class": 0, "kmax": 9, "reps": 20000,
        })
        assert run(["margins", "--config", cfg, "--out", tmp_path / "o"]) == 0
        summary = json.loads((tmp_path / "o" / "summary.json").read_text())
        assert summary["assumption"]["verdict"] == "correct"
        assert summary["exact_curve"]["monotonicity"]["verdict"] == "decreasing"
        vals = summary["exact_curve"]["value"]
        np.testing.assert_allclose(vals, stats.norm.cdf(-0.5 * np.sqrt(np.arange(1, 10))),
                                   atol=1e-12)


class TestCounterexamplesCommand:
    def test_four_csvs_and_verdicts(self, tmp_path):
        assert run(["counterexamples", "--out", tmp_path / "o", "--nmax", 150]) == 0
        for name in ("condorcet-binomial.csv", "mass-restored.csv", "levy.csv", "cauchy.csv"):
            assert (tmp_path / "o" / name).exists()
        cases = json.loads((tmp_path / "o" / "summary.json").read_text())["cases"]
        assert cases["condorcet_binomial"]["verdict"] == "non_monotone"
        assert cases["mass_restored"]["verdict"] == "eventually_decreasing"
        assert cases["levy"]["verdict"] == "increasing"
        assert cases["cauchy"]["verdict"] == "flat"
        assert cases["condorcet_binomial"]["odd_subsequence_decreasing"]


class TestSyntheticSplitCommand:
    def test_buckets_and_panel_directions(self, tmp_path):
        cfg = write_config(tmp_path / "s.json", {
            "n_items": 30, "n_correct": 24, "n_zero": 1,
            "kmax": 25, "reps": 1500, "method": "mc",
        })
        assert run(["synthetic-split", "--config", cfg, "--seed", 5,
                    "--out", tmp_path / "o"]) == 0
        summary = json.loads((tmp_path / "o" / "summary.json").read_text())
        assert summary["bucket_sizes"] == {"correct": 24, "incorrect": 5, "mixed": 1}
        assert summary["panels"]["error_correct"]["monotonicity"]["verdict"] in (
            "decreasing", "eventually_decreasing")
        assert summary["panels"]["error_incorrect"]["monotonicity"]["verdict"] in (
            "increasing", "eventually_increasing")
        for panel in ("xent_overall", "xent_correct", "xent_incorrect"):
            assert summary["panels"][panel]["monotonicity"]["verdict"] in (
                "decreasing", "eventually_decreasing")
        for name in summary["files"]:
            assert (tmp_path / "o" / name).exists()

    def test_single_item_exact_matches_phi_curve(self, tmp_path):
        cfg = write_config(tmp_path / "s.json", {
            "n_items": 1, "n_correct": 1, "kmax": 8, "method": "exact",
            "margin_range": [0.5, 0.5],
        })
        assert run(["synthetic-split", "--config", cfg, "--out", tmp_path / "o"]) == 0
        lines = (tmp_path / "o" / "error_overall.csv").read_text().strip().splitlines()[1:]
        vals = np.array([float(l.split(",")[1]) for l in lines])
        np.testing.assert_allclose(vals, stats.norm.cdf(-0.5 * np.sqrt(np.arange(1, 9))),
                                   atol=1e-12)

    def test_deterministic_panels(self, tmp_path):
        cfg = write_config(tmp_path / "s.json", {
            "n_items": 6, "n_correct": 4, "kmax": 10, "reps": 500, "method": "mc",
        })
        run(["synthetic-split", "--config", cfg, "--seed", 3, "--out", tmp_path / "a"])
        run(["synthetic-split", "--config", cfg, "--seed", 3, "--out", tmp_path / "b"])
        for name in ("error_correct.csv", "xent_incorrect.csv", "summary.json"):
            assert (tmp_path / "a" / name).read_bytes() == (tmp_path / "b" / name).read_bytes()
