import csv
import io
import json
import math
from contextlib import redirect_stdout

import pytest

from dunkl_a2.cli import SWEEP_HEADER, main


def run_cli(*argv):
    buf = io.StringIO()
    with redirect_stdout(buf):
        try:
            code = main(list(argv))
        except SystemExit as exc:  # argparse usage errors
            code = exc.code
    return code, buf.getvalue()


class TestEval:
    def test_normalization_at_origin(self):
        code, out = run_cli("eval", "--X", "0,0,0", "--lambda", "2,1,-3", "--k", "0.7")
        assert code == 0
        row = next(csv.DictReader(io.StringIO(out)))
        assert float(row["value"]) == pytest.approx(1.0, abs=1e-7)
        assert row["chamber"] == "C123"

    def test_json_format(self):
        code, out = run_cli(
            "eval", "--X", "1,0,-1", "--lambda", "2,1,-3", "--k", "1", "--format", "json"
        )
        assert code == 0
        row = json.loads(out)
        assert float(row["log_ratio"]) == pytest.approx(
            float(row["kernel_log"]) - float(row["estimate_log"]), abs=1e-12
        )

    def test_output_file(self, tmp_path):
        target = tmp_path / "row.csv"
        code, _ = run_cli(
            "eval", "--X", "1,0,-1", "--lambda", "2,1,-3", "--k", "1", "--out", str(target)
        )
        assert code == 0
        assert target.read_text().startswith("X,lambda,k,")

    def test_spectral_point_canonicalized_by_equivariance(self):
        # lambda from another chamber: the pair is jointly W-mapped and the
        # kernel value agrees with the directly canonical invocation
        code, out = run_cli("eval", "--X", "1,0,-1", "--lambda", "1,2,-3", "--k", "1")
        assert code == 0
        row = next(csv.DictReader(io.StringIO(out)))
        assert row["lambda"] == "2,1,-3" and row["X"] == "0,1,-1"
        _, out2 = run_cli("eval", "--X", "0,1,-1", "--lambda", "2,1,-3", "--k", "1")
        row2 = next(csv.DictReader(io.StringIO(out2)))
        assert float(row["kernel_log"]) == pytest.approx(float(row2["kernel_log"]), abs=1e-12)


class TestSweep:
    def test_csv_schema_and_determinism(self, tmp_path):
        out1, out2 = tmp_path / "a.csv", tmp_path / "b.csv"
        for out in (out1, out2):
            code, summary = run_cli(
                "sweep", "--chamber", "C231", "--radius", "4", "--grid", "4",
                "--k", "1", "--out", str(out),
            )
            assert code == 0
        with open(out1) as fh:
            header = next(csv.reader(fh))
        assert header == SWEEP_HEADER
        assert out1.read_bytes() == out2.read_bytes()
        stats = json.loads(summary)
        assert stats["count"] == 16
        assert stats["failures"] == 0
        assert stats["spread"] == pytest.approx(
            stats["log_ratio_max"] - stats["log_ratio_min"]
        )

    def test_jobs_flag_preserves_bytes(self, tmp_path):
        a, b = tmp_path / "s1.csv", tmp_path / "s2.csv"
        run_cli("sweep", "--chamber", "C123", "--radius", "3", "--grid", "4", "--k", "1",
                "--out", str(a))
        run_cli("sweep", "--chamber", "C123", "--radius", "3", "--grid", "4", "--k", "1",
                "--out", str(b), "--jobs", "2")
        assert a.read_bytes() == b.read_bytes()


class TestValidate:
    def test_single_suite_passes(self):
        code, out = run_cli("validate", "--suite", "geometry")
        assert code == 0
        assert "[PASS]" in out and "[FAIL]" not in out

    def test_unknown_suite_is_usage_error(self):
        code, _ = run_cli("validate", "--suite", "bogus")
        assert code == 2


class TestHeat:
    def test_row_schema(self):
        code, out = run_cli("heat", "--t", "0.5", "--X", "1,0,-1", "--Y", "2,1,-3", "--k", "1")
        assert code == 0
        row = next(csv.DictReader(io.StringIO(out)))
        p, est, ratio = float(row["p_t"]), float(row["estimate"]), float(row["log_ratio"])
        assert p > 0 and est > 0
        assert ratio == pytest.approx(math.log(p) - math.log(est), abs=1e-9)

    def test_spatial_argument_from_any_chamber(self):
        # negative-leading triples use the = syntax
        code, _ = run_cli("heat", "--t", "0.5", "--X", "1,0,-1", "--Y=-1,0,1", "--k", "1")
        assert code == 0

    def test_x_outside_closed_positive_chamber_is_usage_error(self):
        code, _ = run_cli("heat", "--t", "0.5", "--X", "0,1,-1", "--Y", "2,1,-3", "--k", "1")
        assert code == 2


class TestGolden:
    def test_regenerate_and_check(self, tmp_path):
        pytest.importorskip("mpmath")
        code, out = run_cli("golden", "--out", str(tmp_path), "--check")
        assert code == 0
        assert "reproduced" in out
        assert (tmp_path / "kernel.csv").exists()


class TestUsageErrors:
    @pytest.mark.parametrize(
        "argv",
        [
            ("eval", "--X", "1,0,-1", "--lambda", "1,1,-2", "--k", "1"),  # wall lambda
            ("eval", "--X", "1,0", "--lambda", "2,1,-3", "--k", "1"),  # bad triple
            ("eval", "--X", "1,0,-1", "--lambda", "2,1,-3", "--k", "0"),  # k out of range
            ("sweep", "--chamber", "C999", "--radius", "4", "--grid", "4", "--k", "1", "--out", "x.csv"),
            ("sweep", "--chamber", "C123", "--radius", "99", "--grid", "4", "--k", "1", "--out", "x.csv"),
        ],
    )
    def test_exit_code_two(self, argv):
        code, _ = run_cli(*argv)
        assert code == 2

    def test_nonconvergence_exit_code_three(self):
        code, _ = run_cli(
            "eval", "--X", "30,5,-35", "--lambda", "33,2,-35", "--k", "2",
            "--rel-tol", "1e-14",
        )
        assert code == 3


class TestConfigFile:
    def test_config_supplies_defaults_flags_override(self, tmp_path):
        cfg = tmp_path / "run.toml"
        cfg.write_text('[eval]\nk = 1.0\n"rel-tol" = 1e-9\nformula = "alpha"\n')
        code, out = run_cli(
            "--config", str(cfg), "eval", "--X", "1,0,-1", "--lambda", "2,1,-3", "--k", "2"
        )
        assert code == 0
        row = next(csv.DictReader(io.StringIO(out)))
        assert float(row["k"]) == 2.0  # flag wins
        assert row["formula"] == "alpha"  # config supplies the rest
