import json
import os
import subprocess

import jsonschema
import pytest

from test_smoke import schema

CLI = os.environ.get("PLATVOL_CLI")
pytestmark = pytest.mark.skipif(not CLI, reason="PLATVOL_CLI not set")


def run(*args, cache):
    return subprocess.run([CLI, "--cache-dir", str(cache), *args], capture_output=True, text=True)


def test_arcs_json_matches_schema_and_is_byte_stable(tmp_path):
    a = run("arcs", "B4: 2 2 2", "--json", cache=tmp_path / "a")
    b = run("arcs", "B4: 2 2 2", "--json", cache=tmp_path / "b")
    again = run("arcs", "B4: 2 2 2", "--json", cache=tmp_path / "a")
    assert a.returncode == 0
    assert a.stdout == b.stdout == again.stdout
    doc = json.loads(a.stdout)
    jsonschema.validate(doc, schema("run_document.schema.json"))


def test_integrate_json_matches_schema(tmp_path):
    r = run("integrate", "B4: 2 2 2 2 2", "--json", cache=tmp_path)
    assert r.returncode == 0
    doc = json.loads(r.stdout)
    jsonschema.validate(doc, schema("run_document.schema.json"))
    assert len(doc["arcs"]) == 2


def test_invariance_json_matches_schema(tmp_path):
    r = run("invariance", "B4: 2 2 2", "--moves", "stabilize,reverse", "--json", cache=tmp_path)
    assert r.returncode == 0
    jsonschema.validate(json.loads(r.stdout), schema("invariance_report.schema.json"))


def test_csv_header(tmp_path):
    r = run("arcs", "B4: 2 2 2", "--csv", cache=tmp_path)
    assert r.returncode == 0
    lines = r.stdout.splitlines()
    assert lines[0] == "arc_id,theta_m,meridian_trace,omega_dtheta,sign,residual"
    assert all(len(line.split(",")) == 6 for line in lines[1:])


def test_exit_codes(tmp_path):
    assert run("frobnicate", cache=tmp_path).returncode == 2
    assert run("volume", "B4: 2 2 2", cache=tmp_path).returncode == 2  # --theta missing
    assert run("alexander", "B4: 2 2 2", "--csv", cache=tmp_path).returncode == 2
    assert run("alexander", "B4 2 2", cache=tmp_path).returncode == 2
    bad = run("arcs", "B4: 2 2", "--json", cache=tmp_path)
    assert bad.returncode == 1
    diag = json.loads(bad.stdout)
    assert diag["error"] == "NotAKnot"
    assert diag["command"] == "arcs"
