import json
import subprocess
import sys

import pytest

from floquet_forge.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_expand_text(capsys):
    code, out, _ = run(capsys, "expand", "--eq", "mathieu", "--region", "electric", "--order", "4",
                       "--format", "text")
    assert code == 0
    assert "(nu^2)" in out and "h^4" in out


def test_expand_json_has_schema(capsys):
    code, out, _ = run(capsys, "expand", "--eq", "lame", "--region", "dyonic", "--form", "A",
                       "--order", "2", "--format", "json")
    assert code == 0
    d = json.loads(out)
    assert d["schema"] == "1" and d["region"] == "dyonic" and d["route"] == "wkb"


def test_expand_constant_band(capsys):
    code, out, _ = run(capsys, "expand", "--eq", "lame", "--region", "electric", "--form", "B",
                       "--order", "0", "--format", "text")
    assert code == 0
    assert "-nu^2 + 1/3*nn1" in out


def test_expand_latex(capsys):
    code, out, _ = run(capsys, "expand", "--format", "latex", "--order", "2")
    assert code == 0 and "\\nu" in out


def test_alias_region(capsys):
    code, out, _ = run(capsys, "expand", "--region", "potential-well-bottom", "--order", "1")
    assert code == 0 and json.loads(out)["region"] == "dyonic"


def test_json_is_deterministic(capsys):
    a = run(capsys, "expand", "--eq", "lame", "--region", "magnetic", "--order", "2")[1]
    b = run(capsys, "expand", "--eq", "lame", "--region", "magnetic", "--order", "2")[1]
    assert a == b


def test_config_errors_exit_2(capsys, monkeypatch):
    assert run(capsys, "expand", "--eq", "lame", "--region", "magnetic", "--form", "B")[0] == 2
    assert run(capsys, "expand", "--eq", "mathieu", "--form", "A")[0] == 2
    assert run(capsys, "expand", "--region", "nowhere")[0] == 2
    monkeypatch.setenv("FLOQUET_FORGE_MAX_ORDER", "3")
    code, out, err = run(capsys, "expand", "--order", "4")
    assert code == 2 and out == "" and "FLOQUET_FORGE_MAX_ORDER" in err


def test_verify_routes(capsys):
    code, out, _ = run(capsys, "verify", "--routes", "--eq", "lame", "--region", "electric", "--order", "2")
    assert code == 0 and json.loads(out)["passed"]


def test_verify_single_route_region_fails(capsys):
    code, out, _ = run(capsys, "verify", "--routes", "--eq", "lame", "--region", "magnetic")
    assert code == 1 and not json.loads(out)["passed"]


def test_verify_oracle(capsys):
    code, out, err = run(capsys, "verify", "--oracle", "--eq", "mathieu", "--region", "electric",
                         "--nu", "5", "--h", "1", "--tol", "1e-6")
    assert code == 0
    json.loads(out)  # stdout is pure JSON even with notes on stderr


def test_verify_oracle_computation_error(capsys):
    code, out, err = run(capsys, "verify", "--oracle", "--eq", "mathieu", "--nu", "0.5", "--h", "300")
    assert code == 3 and out == "" and "StiffnessFailure" in err


def test_verify_mirror(capsys):
    code, out, _ = run(capsys, "verify", "--mirror", "--order", "4", "--format", "text")
    assert code == 0 and out.count("PASS") == 2


def test_verify_needs_a_check(capsys):
    assert run(capsys, "verify")[0] == 2


def test_limits(capsys):
    code, out, _ = run(capsys, "limits", "--jobs", "2")
    d = json.loads(out)
    assert code == 0 and [c["passed"] for c in d["checks"]] == [True, True, True]


def test_console_script_entry_point():
    proc = subprocess.run([sys.executable, "-m", "floquet_forge.cli", "expand", "--order", "2"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and json.loads(proc.stdout)["schema"] == "1"
