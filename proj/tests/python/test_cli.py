import json
import os
import subprocess
from pathlib import Path

import pytest

CLI = os.environ.get("TORVEC_CLI", "build/torvec")
DATA = Path(os.environ.get("TORVEC_TEST_DATA", Path(__file__).resolve().parents[1] / "data"))


def run(*args, env=None):
    proc = subprocess.run([CLI, *map(str, args)], capture_output=True, text=True, env=env)
    return proc.returncode, proc.stdout


def run_json(*args, env=None):
    code, out = run(*args, env=env)
    return code, json.loads(out)


def test_validate_fan_quadrant():
    code, rep = run_json("validate-fan", DATA / "quadrant_fan.json")
    assert code == 0
    assert rep["ok"]


def test_validate_fan_rejects_dependent_cone():
    code, rep = run_json("validate-fan", DATA / "fan_bad.json")
    assert code == 1
    assert "simplicial" in rep["message"]


def test_check_compat_line_in_plane():
    code, rep = run_json("check-compat", DATA / "line_in_plane.json", DATA / "psi_line_plane.json")
    assert code == 0
    assert rep["ok"]


def test_check_compat_witness():
    code, rep = run_json("check-compat", DATA / "line_off_plane.json", DATA / "psi_line_plane.json")
    assert code == 1
    assert rep["tuple"] == [1, 1]
    assert rep["intersection_dim"] == 0
    assert rep["count"] == 1


def test_infer_and_split():
    code, rep = run_json("infer-psi", DATA / "line_in_plane.json")
    assert code == 0
    assert rep["cones"][0]["classes"] == [[0, 0], [0, 1], [1, 1]]
    code, rep = run_json("split", DATA / "line_in_plane.json", DATA / "psi_line_plane.json")
    assert code == 0
    assert len(rep["splittings"]) == 1


def test_chern_and_conditions():
    code, rep = run_json("chern", DATA / "psi_line_plane.json")
    assert code == 0
    assert rep["rank"] == 3
    code, rep = run_json("conditions", DATA / "psi_rank2.json")
    assert code == 0
    assert rep["count"] == len(rep["conditions"])


def test_member_wrong_dims():
    code, rep = run_json("member", DATA / "flags_wrong_dims.json", DATA / "psi_rank2.json")
    assert code == 2
    assert "flags/0/0" in rep["message"]


@pytest.mark.parametrize("p,count", [(2, 6), (3, 12)])
def test_enumerate_rank2(p, count):
    code, rep = run_json("enumerate", DATA / "psi_rank2.json", "--p", p, "--orbits")
    assert code == 0
    assert rep["count"] == count
    assert rep["orbits"]["group_order"] % rep["orbits"]["orbit_sizes"][0] == 0


def test_mnev_verify(tmp_path):
    code, rep = run_json("mnev", "--d", 1, "--dprime", 1, "--incidences", "1:1", "--verify-field", 2,
                         "--out-dir", tmp_path)
    assert code == 0
    assert rep["verification"]["moduli_count"] == 21
    assert rep["validate_fan"] and rep["validate_psi"]
    code, rep = run_json("enumerate", tmp_path / "psi.json", "--p", 2, "--orbits")
    assert code == 0
    assert rep["count"] == 21
    assert rep["orbits"]["orbit_count"] == 1


def test_bad_usage():
    assert run("no-such-command")[0] == 2
    assert run("validate-fan", DATA / "missing.json")[0] == 2
    code, rep = run_json("mnev", "--d", 1, "--dprime", 1, "--incidences", "3:1")
    assert code == 2
    assert rep["error"] == "input"


def test_output_is_deterministic():
    args = ("enumerate", DATA / "psi_rank2.json", "--p", 3, "--points", "--orbits")
    first = run(*args)
    assert first[0] == 0
    for _ in range(3):
        assert run(*args) == first


def test_budget_exceeded():
    env = dict(os.environ, TORVEC_ENUM_BUDGET="10")
    code, rep = run_json("enumerate", DATA / "psi_rank2.json", "--p", 3, env=env)
    assert code == 2
    assert rep["error"] == "budget"
