import json
import math
import subprocess
import sys
from pathlib import Path

import numpy as np
import pytest

from oscillax.oscillatory import SymbolParams, gaussian_free_evolution


def run_cli(args, **kw):
    return subprocess.run([sys.executable, "-m", "oscillax.cli"] + args,
                          capture_output=True, text=True, **kw)


def test_eval_matches_free_propagator(tmp_path):
    res = run_cli(["eval", "--out-dir", str(tmp_path), "--family", "gaussian",
                   "--a", "2", "--n", "2", "--r", "0", "--t", "0.3"])
    assert res.returncode == 0
    fields = dict(part.split("=") for part in res.stdout.split())
    ref = gaussian_free_evolution(1.0, SymbolParams(a=2.0, n=2), 0.0, 0.3)
    assert float(fields["re"]) == pytest.approx(ref.real, rel=1e-10)
    assert float(fields["im"]) == pytest.approx(ref.imag, rel=1e-10)


def test_eval_grid_csv_shape(tmp_path):
    res = run_cli(["eval-grid", "--out-dir", str(tmp_path), "--family",
                   "annular", "--N", "2", "--a", "0.5", "--n", "2",
                   "--r-grid", "0:2:3", "--t-grid=-0.5:0.5:3"])
    assert res.returncode == 0
    lines = (tmp_path / "eval_grid.csv").read_text().strip().splitlines()
    assert lines[0] == "r,t,re,im,abs"
    assert len(lines) == 1 + 3 * 3


def test_transform_gaussian_total_mass(tmp_path):
    res = run_cli(["transform", "--out-dir", str(tmp_path), "--family",
                   "gaussian", "--n", "2", "--rho-grid", "0:2:5"])
    assert res.returncode == 0
    lines = (tmp_path / "transform.csv").read_text().strip().splitlines()
    first = lines[1].split(",")
    assert float(first[1]) == pytest.approx(2.0 * math.pi, rel=1e-10)


def test_sweep_row_count_and_exponents(tmp_path):
    res = run_cli(["sweep", "--out-dir", str(tmp_path), "--a", "0.5", "--n", "2",
                   "--s-list", "0.0625,0.375", "--N-list", "2,4,8,16",
                   "--range", "local", "--modulated", "--y-count", "4"])
    assert res.returncode == 0
    lines = (tmp_path / "sweep.csv").read_text().strip().splitlines()
    assert len(lines) == 1 + 2 * 4
    summary = json.loads((tmp_path / "sweep_summary.json").read_text())
    assert len(summary["exponents"]) == 2
    assert summary["version"]
    assert summary["converged"] is True


def test_sweep_summary_round_trips(tmp_path):
    out1 = tmp_path / "run1"
    out2 = tmp_path / "run2"
    base = ["sweep", "--a", "0.5", "--n", "2", "--s-list", "0.0625",
            "--N-list", "2,4", "--range", "local", "--modulated",
            "--y-count", "4"]
    assert run_cli(base + ["--out-dir", str(out1)]).returncode == 0
    summary = json.loads((out1 / "sweep_summary.json").read_text())
    cfg = summary["config"]
    rebuilt = ["sweep", "--out-dir", str(out2),
               "--a", str(cfg["a"]), "--n", str(cfg["n"]),
               "--s-list", cfg["s_list"], "--N-list", cfg["N_list"],
               "--range", cfg["range"], "--y-count", str(cfg["y_count"])]
    if cfg["modulated"]:
        rebuilt.append("--modulated")
    assert run_cli(rebuilt).returncode == 0
    assert (out1 / "sweep.csv").read_bytes() == (out2 / "sweep.csv").read_bytes()


def test_config_file_defaults_and_flag_override(tmp_path):
    conf = tmp_path / "run.conf"
    conf.write_text("a=0.5\nn=2\ns_list=0.0625\nN_list=2,4\n"
                    "range=local\nmodulated=true\ny_count=4\n")
    res = run_cli(["sweep", "--config", str(conf), "--out-dir", str(tmp_path)])
    assert res.returncode == 0
    lines = (tmp_path / "sweep.csv").read_text().strip().splitlines()
    assert len(lines) == 1 + 2
    assert lines[1].split(",")[5] == "local"


def test_bessel_check_half_integer_remainder(tmp_path):
    res = run_cli(["bessel-check", "--out-dir", str(tmp_path),
                   "--lambda", "0.5", "--rho-min", "2", "--rho-max", "4096",
                   "--count", "512"])
    assert res.returncode == 0
    lines = (tmp_path / "bessel_check.csv").read_text().strip().splitlines()
    assert lines[0] == "rho,j,main,remainder,scaled_remainder"
    scaled = np.array([float(l.split(",")[4]) for l in lines[1:]])
    assert scaled.max() <= 1e-10


def test_oracle_compare_csv(tmp_path):
    res = run_cli(["oracle-compare", "--out-dir", str(tmp_path), "--family",
                   "bump", "--center", "1", "--width", "0.7", "--n", "2",
                   "--rho-grid", "0.5:4:3"])
    assert res.returncode == 0
    lines = (tmp_path / "oracle_compare.csv").read_text().strip().splitlines()
    rel = np.array([float(l.split(",")[3]) for l in lines[1:]])
    assert rel.max() <= 1e-6


def test_usage_error_exit_code(tmp_path):
    res = run_cli(["sweep", "--out-dir", str(tmp_path), "--a", "2", "--n", "2",
                   "--s-list", "0.25"])
    assert res.returncode == 2


def test_missing_required_reports_usage(tmp_path):
    res = run_cli(["eval", "--out-dir", str(tmp_path), "--family", "gaussian",
                   "--a", "2", "--n", "2", "--r", "0"])
    assert res.returncode == 2
    assert "--t" in res.stderr
