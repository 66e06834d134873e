import io
import json
import subprocess
import sys

import pytest

from bidiff.cli import CliConfig, main, run
from test_jetio import validate


def invoke(*args):
    out, err = io.StringIO(), io.StringIO()
    parser_args = list(args)
    from bidiff.cli import build_parser

    ns = build_parser().parse_args(parser_args)
    status = run(CliConfig(ns.command, ns.max_order, ns.format, ns.output, ns.seed), out, err)
    return status, out.getvalue(), err.getvalue()


def test_densities_text():
    status, out, _ = invoke("densities", "-m", "2", "--format", "text")
    assert status == 0
    assert out.splitlines() == ["rho[0] = u", "rho[1] = -u_x", "rho[2] = u_xx + (1/6)*u^2"]


def test_charges_json_skips_odd_orders():
    status, out, _ = invoke("charges", "-m", "3", "--format", "json")
    doc = json.loads(out)
    validate(doc, "series")
    assert status == 0
    assert [e["m"] for e in doc["entries"]] == [0, 2]


def test_flux_latex():
    status, out, _ = invoke("flux", "-m", "1", "--format", "latex")
    assert out.splitlines()[0] == "F^{(0)} = u_{xx} + \\frac{1}{2} u^{2}"


def test_verify_passes():
    status, out, err = invoke("verify", "-m", "12")
    assert status == 0
    assert err == ""
    lines = out.splitlines()
    assert all(line.startswith("PASS") for line in lines)
    assert "PASS  conservation[12]" in lines
    assert "PASS  match-charge[10]" in lines


def test_verify_json_schema():
    status, out, _ = invoke("verify", "-m", "3", "--format", "json")
    validate(json.loads(out), "checks")


def test_verify_failure_exit_code(monkeypatch):
    import bidiff.conserve as c
    from bidiff.jetio import parse

    monkeypatch.setattr(c, "flux", lambda m: parse("u^2"))
    status, out, err = invoke("verify", "-m", "0")
    assert status == 1
    assert "FAIL  conservation[0]" in out
    assert "residual" in err


def test_calculus_check():
    status, out, _ = invoke("calculus-check", "--seed", "3")
    assert status == 0
    assert "PASS  x delta x = (delta x) x + tau" in out


def test_output_file_and_byte_stability(tmp_path):
    p1, p2 = tmp_path / "a.json", tmp_path / "b.json"
    assert main(["densities", "-m", "6", "--format", "json", "-o", str(p1)]) == 0
    assert main(["densities", "-m", "6", "--format", "json", "-o", str(p2)]) == 0
    assert p1.read_bytes() == p2.read_bytes()
    validate(json.loads(p1.read_text()), "series")


def test_usage_errors_exit_2():
    with pytest.raises(SystemExit) as exc:
        main(["densities", "-m", "-3"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        main(["bogus"])
    assert exc.value.code == 2


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "bidiff", "densities", "-m", "1"], capture_output=True, text=True)
    assert proc.returncode == 0
    assert proc.stdout == "rho[0] = u\nrho[1] = -u_x\n"
