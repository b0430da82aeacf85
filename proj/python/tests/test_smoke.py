import json
import math
import os
import subprocess
from pathlib import Path

import pytest

DATA = Path(__file__).resolve().parents[2] / "data"
CLI = os.environ.get("BLOWUP_CLI")

try:
    import blowup
except ImportError:  # extension not installed; the CLI tests still run
    blowup = None

needs_module = pytest.mark.skipif(blowup is None, reason="blowup extension not installed")
needs_cli = pytest.mark.skipif(not CLI, reason="BLOWUP_CLI not set")


def run_cli(*args):
    return subprocess.run([CLI, *args], capture_output=True, text=True, check=False)


@needs_cli
def test_cli_check_example1():
    r = run_cli("--format", "json", "check", "--config", str(DATA / "example1_p3.json"))
    assert r.returncode == 0
    report = json.loads(r.stdout)["report"]
    assert report["verdict"] == "admissible"
    assert report["witness"] == pytest.approx([0.25] * 4)


@needs_cli
def test_cli_ledger_failure():
    r = run_cli("ledger", "--n", "2", "--delta", "9/10")
    assert r.returncode == 1
    assert "ii" in r.stderr


@needs_cli
def test_cli_bad_input():
    assert run_cli("ledger", "--n", "2", "--delta", "nope").returncode == 2


@needs_module
def test_check_and_catalog():
    cfg = json.loads((DATA / "example1_p3.json").read_text())
    report = blowup.check(cfg)
    assert report["verdict"] == "admissible"
    e6 = blowup.catalog(6)
    assert e6["report"]["c1"] == 3


@needs_module
def test_positive_kernel_and_rank():
    import numpy as np

    k = blowup.positive_kernel(np.array([[1.0, -1.0]]))
    assert k["positive"]
    assert k["witness"] == pytest.approx([0.5, 0.5])
    assert not blowup.positive_kernel(np.array([[1.0, 1.0]]))["positive"]
    assert blowup.rank(np.zeros((2, 3))) == 0
    assert blowup.cn_constant(2) == pytest.approx(4 * math.pi**2)


@needs_module
def test_ledger_and_window():
    ledger = blowup.ledger(3, "-3/2")
    gaps = {e["name"]: e["gap"] for e in ledger["entries"]}
    assert gaps["i-a"] == "11/14"
    assert blowup.delta_window(2, ["ii"]) == "(-inf, 2/3)"


@needs_module
def test_ode_and_poisson():
    t = blowup.integrate_zeta(3, 1000.0, 1e-12)
    assert t["lambda"] == pytest.approx(2.3650942707443, rel=1e-9)
    p = blowup.poisson_map(1, 2)
    assert abs(p["determinant"]) > 1e-6
    assert p["matrix"].shape == (2, 2)


@needs_module
def test_errors_are_translated():
    with pytest.raises(blowup.BlowupError, match="unknown"):
        blowup.catalog(9)


@needs_module
def test_paper_suite_subset():
    report = blowup.paper_suite(criteria=[1, 8])
    assert report["all_ok"]
    assert [r["criterion"] for r in report["rows"]] == [1, 8]
