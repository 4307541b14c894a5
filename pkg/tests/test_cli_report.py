import json
import math
import subprocess
import sys

import numpy as np
import pytest

from kplane_bilinear.cli import TARGETS, RunConfig, main, run
from kplane_bilinear.report import CheckReport, IdentityReport, ReportStatus, dumps

SCHEMA = {"name", "lhs", "rhs", "correction", "abs_err", "rel_err", "params", "passed", "excised_mass"}


def test_identity_report_fields():
    r = IdentityReport("x", 1.0, 1.01, 3e-2, correction=0.0, params={"n": 3})
    d = r.as_dict()
    assert SCHEMA <= d.keys()
    assert d["rel_err"] == pytest.approx(0.01 / 1.01)
    assert r.passed and r.status is ReportStatus.PASSED
    assert not IdentityReport("x", 1.0, 2.0, 1e-3).passed
    assert IdentityReport("z", 0.0, 0.0, 1e-3).rel_err == 0.0
    assert IdentityReport("z", 1e-20, 0.0, 1e-3).rel_err == pytest.approx(1e-6)
    inc = IdentityReport("i", 1.0, 1.0, 1e-3, inconclusive=True)
    assert not inc.passed and inc.status is ReportStatus.INCONCLUSIVE


def test_check_report_conditions():
    assert CheckReport("c", 1e-5, 1e-4).passed
    assert not CheckReport("c", 1e-5, 1e-4, conditions={"ok": False}).passed
    assert not CheckReport("c", math.inf, 0.0).passed


def test_dumps_seventeen_digits_and_specials():
    text = dumps({"a": 0.1, "b": np.float64(1) / 3, "c": math.inf, "z": 1 + 2j, "v": np.arange(2)})
    data = json.loads(text)
    assert data["b"] == 1 / 3
    assert "0.33333333333333331" in text
    assert data["c"] == "inf"
    assert dumps(IdentityReport("x", 1.0, 1.0, 1e-3)) == dumps(IdentityReport("x", 1.0, 1.0, 1e-3))


def test_unknown_target_exit_2(capsys):
    assert main(["verify", "--target", "no-such-identity"]) == 2
    assert "unknown target" in capsys.readouterr().err


def test_unknown_command_exit_2():
    assert run(RunConfig(command="frobnicate")) == 2


def test_constants_command(capsys):
    assert main(["constants", "--d", "1"]) == 0
    out = capsys.readouterr().out
    assert "OT(1) = 0.5" in out
    assert main(["constants", "--d", "7"]) == 2


def test_verify_json_output(tmp_path):
    out = tmp_path / "r.json"
    assert main(["verify", "--target", "fourier-slice", "--output", str(out)]) == 0
    data = json.loads(out.read_text())
    assert data["name"] == "fourier-slice" and data["passed"] is True


def test_verify_failing_tolerance_exit_1(tmp_path):
    out = tmp_path / "r.json"
    assert main(["verify", "--target", "constants", "--tolerance", "1e-30", "--output", str(out)]) == 1


def test_io_error_exit_2(capsys):
    assert main(["constants", "--d", "2", "--output", "/nonexistent-dir/x.json"]) == 2
    assert "error" in capsys.readouterr().err


def test_convolve_and_kernel(capsys):
    assert main(["convolve", "--target", "circle", "--params", "1", "1", "--point", "1.4142135623730951", "0"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["closed"]["re"] == pytest.approx(2.0) and data["closed"]["im"] == 0
    assert main(["convolve", "--target", "circle"]) == 2
    assert main(["kernel", "--target", "sphere", "--xi", "0", "1", "0", "--zeta", "0", "0", "1",
                 "--omega", "1", "0", "0"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["kernel"] == pytest.approx(math.sqrt(2))
    assert main(["kernel", "--target", "hyperboloid", "--xi", "1", "0", "--zeta", "-1", "0",
                 "--omega", "1", "0"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["compact"] == pytest.approx(math.sqrt(2) / 2)


def test_dump_field_csv(tmp_path, capsys):
    out = tmp_path / "f.csv"
    assert main(["dump-field", "--target", "paraboloid", "--points", "32", "--output", str(out)]) == 0
    lines = out.read_text().splitlines()
    assert lines[0] == "x0,x1,re,im" and len(lines) == 1 + 32 * 32
    assert all(len(l.split(",")) == 4 for l in lines[1:])
    assert main(["dump-field", "--target", "paraboloid"]) == 2
    assert main(["dump-field", "--target", "paraboloid", "--points", "16", "--output", str(out)]) == 2


def test_targets_registry():
    assert {"sphere-identity", "hyperboloid-identity", "pv-identity", "honest-paraboloid",
            "plancherel", "constants", "circle-lemma", "hyperbola-lemma"} <= set(TARGETS)


def test_console_entry_point():
    res = subprocess.run([sys.executable, "-m", "kplane_bilinear", "constants", "--d", "2"],
                         capture_output=True, text=True, timeout=120)
    assert res.returncode == 0 and "OT(2) = 0.25" in res.stdout
