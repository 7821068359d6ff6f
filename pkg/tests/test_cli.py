import io
import json
import math
import subprocess
import sys
from pathlib import Path

import jsonschema
import pytest

from milnorkit.cli import EXIT_INVALID, EXIT_NUMERICAL, run
from milnorkit.plotting import is_valid_svg, svg_ids

ROOT = Path(__file__).parent.parent
DATA = Path(__file__).parent / "data"
SCHEMA = json.loads((ROOT / "docs" / "report.schema.json").read_text())


def report(argv, code=0):
    buf = io.StringIO()
    assert run(argv, stdout=buf) == code
    if code:
        return None
    out = json.loads(buf.getvalue())
    jsonschema.validate(out, SCHEMA)
    return out


def test_schema_is_valid():
    jsonschema.Draft202012Validator.check_schema(SCHEMA)


def test_quotient_example():
    r = report(["quotient", "--p", "3", "--q", "1"])["results"]
    assert r["hj"] == [5, 2]
    assert r["det"] == 9
    assert r["H1"] == "Z/3"
    assert r["cover"] == {"H1": "0", "H2": "Z^2", "chi": 3}
    assert r["lens"] == {"order": 9, "type": [9, 2]}


def test_hf_quotient_example():
    r = report(["hf", "--p", "5", "--q", "2"])["results"]
    assert r["ranks"] == {"even": 2, "odd": 2}
    assert r["nonempty"] is True


def test_verdict_example():
    assert report(["verdict", "--p", "2", "--q", "1"])["results"]["verdict"] == "RP2Exception"
    assert report(["verdict", "--p", "7", "--q", "3"])["results"]["verdict"] == "NoneExist"


@pytest.mark.parametrize(
    "argv",
    [
        ["critvals", "--n", "1"],
        ["census", "--n", "2"],
        ["hf", "--n", "1"],
        ["quotient", "--p", "4", "--q", "3"],
        ["pairing", "--p", "6", "--q", "1", "--kappa", "2", "--coeffs", "1,0,0,-1,0,0"],
        ["tau", "--n", "1", "--curve", str(DATA / "polterovich.json")],
    ],
)
def test_every_result_field_has_a_tolerance(argv):
    out = report(argv)
    assert set(out["results"]) <= set(out["metadata"]["tolerances"])
    assert out["metadata"]["conventions"]["l_basis"]
    assert out["metadata"]["conventions"]["pairing_sign_rule"]


def test_sorted_keys_and_inputs_echo():
    buf = io.StringIO()
    run(["hf", "--n", "3"], stdout=buf)
    text = buf.getvalue()
    assert text == json.dumps(json.loads(text), sort_keys=True, indent=2) + "\n"
    assert json.loads(text)["inputs"] == {"n": 3}


def test_env_tolerance_override(monkeypatch):
    argv = ["tau", "--n", "1", "--curve", str(DATA / "polterovich.json")]
    monkeypatch.setenv("MILNORKIT_TOL", "1e-4")
    assert report(argv)["metadata"]["tolerances"]["tau"] == 1e-4
    monkeypatch.setenv("MILNORKIT_TOL", "abc")
    report(argv, code=EXIT_INVALID)
    report(argv + ["--tol", "-1"], code=EXIT_INVALID)


def test_cli_tol_beats_env(monkeypatch):
    monkeypatch.setenv("MILNORKIT_TOL", "1e-4")
    argv = ["tau", "--n", "1", "--curve", str(DATA / "polterovich.json"), "--tol", "1e-5"]
    assert report(argv)["metadata"]["tolerances"]["tau"] == 1e-5


@pytest.mark.parametrize(
    "argv",
    [
        ["hf", "--n", "2", "--bogus"],
        ["nosuchcommand"],
        ["quotient", "--p", "4", "--q", "2"],
        ["quotient", "--p", "x", "--q", "1"],
        ["hf", "--n", "1", "--p", "3", "--q", "1"],
        ["hf"],
        ["census", "--n", "-3"],
        ["pairing", "--p", "5", "--q", "1", "--kappa", "0", "--coeffs", "0,0,0,0,0"],
        ["pairing", "--p", "4", "--q", "1", "--kappa", "0", "--coeffs", "1,1,0,0"],
        ["pairing", "--p", "4", "--q", "1", "--kappa", "0", "--coeffs", "a,b"],
        ["tau", "--n", "1", "--curve", "/nonexistent/curve.json"],
    ],
)
def test_invalid_input_exits_2(argv):
    report(argv, code=EXIT_INVALID)


def test_curve_through_critical_value_is_invalid(tmp_path):
    path = tmp_path / "bad.json"
    # circle of radius 1/2 through the critical value 1
    pts = [[0.5 + 0.5 * math.cos(2 * math.pi * k / 32), 0.5 * math.sin(2 * math.pi * k / 32)] for k in range(32)]
    path.write_text(json.dumps({"closed": True, "points": pts}))
    report(["tau", "--n", "0", "--curve", str(path)], code=EXIT_INVALID)


def test_quadrature_failure_exits_3(monkeypatch):
    from milnorkit import cli
    from milnorkit.errors import QuadratureError

    def boom(*a, **k):
        raise QuadratureError("panel budget exhausted")

    monkeypatch.setattr(cli, "tau", boom)
    report(["tau", "--n", "1", "--curve", str(DATA / "polterovich.json")], code=EXIT_NUMERICAL)


def test_render_writes_svg(tmp_path):
    out = tmp_path / "scene.svg"
    r = report(["render", "--n", "3", "--curve", str(DATA / "circle2.json"), "--out", str(out), "--p", "5", "--q", "3"])
    svg = out.read_text()
    assert is_valid_svg(svg)
    assert len(svg_ids(svg, "puncture-")) == 4 == r["results"]["punctures"]
    assert r["results"]["plumbing_nodes"] == 3


def test_render_needs_both_p_and_q(tmp_path):
    report(["render", "--n", "1", "--out", str(tmp_path / "x.svg"), "--p", "5"], code=EXIT_INVALID)


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "milnorkit", "hf", "--n", "0"], capture_output=True, text=True, check=False
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["results"]["ranks"] == {"even": 0, "odd": 0}
    proc = subprocess.run([sys.executable, "-m", "milnorkit", "--nope"], capture_output=True, text=True, check=False)
    assert proc.returncode == 2
