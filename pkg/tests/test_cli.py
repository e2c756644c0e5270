from __future__ import annotations

import json
import subprocess
import sys
from importlib import resources
from pathlib import Path

import jsonschema
import pytest

from orthoperad.cli import COMMANDS, main, run
from orthoperad.corpus import names

DATA = resources.files("orthoperad") / "data"
SCHEMA = json.loads((Path(__file__).parent.parent / "docs" / "report_schema.json").read_text())


def corpus(name):
    return str(DATA / f"{name}.oc")


def call(*argv):
    code, out = run(list(argv))
    report = json.loads(out)
    jsonschema.validate(report, SCHEMA)
    return code, report


def test_jclosed_single_object():
    code, report = call("jclosed", corpus("vee"), "--functor", "j", "--object", "d")
    assert code == 0
    assert report["result"] == {"d": False, "counterexample": ["g1", "g2"]}


def test_jclosed_all_objects_disc():
    _, report = call("jclosed", corpus("disc"))
    closed = report["result"]["closed"]
    assert sorted(d for d, v in closed.items() if not v) == ["s02", "s13"]


def test_compare_vee():
    code, report = call("compare", corpus("vee"), "--algebra", "B", "--bound", "2")
    d = report["result"]["objects"]["d"]
    assert (d["kan"], d["operadic"]) == (5, 4)
    assert not report["result"]["iso"]
    assert report["bounds"]["bound"] == 2
    assert code == 0


def test_compare_wedge_iso():
    _, report = call("compare", corpus("wedge"), "--bound", "3")
    assert report["result"]["iso"]


def test_axioms_ptmax():
    code, report = call("axioms", corpus("ptmax"), "--arity", "3")
    assert code == 0
    assert report["result"]["violations"] == []
    assert report["status"] == "ok"


def test_component_counts():
    _, report = call("component", corpus("vee"), "--target", "d", "--profile", "c1,c2")
    assert report["result"]["count"] == 1
    _, report = call("component", corpus("vee_empty"), "--target", "d", "--profile", "c1,c2")
    assert report["result"]["count"] == 2


def test_compose_canonical():
    code, report = call(
        "compose", corpus("vee"), "--outer", "d/2,1/g1,g2", "--inner", "c1/1/id_c1", "--inner", "c2/1/id_c2"
    )
    assert code == 0
    assert report["result"]["composite"]["sigma"] == [1, 2]


def test_perpcheck_violation_exit_code(tmp_path):
    text = (
        "fixture ptmax\n"
        "monoid L { elems e a b; unit e; table e a b | a a a | b b b }\n"
        "monfunctor A on ptmax { pt -> L }\n"
    )
    f = tmp_path / "bad.oc"
    f.write_text(text)
    code, report = call("perpcheck", str(f))
    assert code == 1
    assert report["status"] == "violation"
    assert report["result"]["per_object"] == {"pt": False}


def test_abelianize_counts(tmp_path):
    f = tmp_path / "free.oc"
    f.write_text("fixture ptmax\npresented P { gens a b; rel a a = 1; rel b b = 1 }\nmonfunctor A on ptmax { pt -> P }\n")
    code, report = call("abelianize", str(f), "--bound", "2")
    assert code == 0
    assert report["result"]["counts_before"] == {"pt": 5}
    assert report["result"]["counts_after"] == {"pt": 4}


def test_orbifold():
    _, report = call("orbifold", corpus("ptmax"))
    assert report["result"]["fixed"] == {"pt": ["z0_z0", "z1_z1"]}


def test_jlocal_exit_codes():
    code, report = call("jlocal", corpus("vee"), "--algebra", "A", "--bound", "3")
    assert code == 0 and report["result"]["local"]


def test_extend_methods():
    _, kan = call("extend", corpus("vee"), "--method", "kan", "--bound", "2")
    _, op = call("extend", corpus("vee"), "--method", "operadic", "--bound", "2")
    assert kan["result"]["counts"]["d"] == 5
    assert op["result"]["counts"]["d"] == 4


@pytest.mark.parametrize("name", names())
def test_validate_corpus(name):
    code, report = call("validate", corpus(name))
    assert code == 0, report


def test_validate_reports_violation(tmp_path):
    f = tmp_path / "v.oc"
    f.write_text("object a, b\nmorphism f : a -> b\north (f, id_a)\n")
    code, report = call("validate", str(f))
    assert code == 1
    assert report["result"]["categories"]["main"] == ["orthogonal pair (f, id_a) has different targets"]


def test_input_errors(tmp_path):
    f = tmp_path / "e.oc"
    f.write_text("object a\north (a, b)\n")
    code, report = call("validate", str(f))
    assert code == 2
    assert report["status"] == "input-error"
    assert report["result"]["line"] == 2
    code, report = call("validate", str(tmp_path / "missing.oc"))
    assert code == 2 and report["inputs_digest"] is None
    code, _ = call("compose", corpus("vee"), "--outer", "d/1,1/g1,g2")
    assert code == 2
    code, _ = call("component", corpus("vee"), "--target", "nowhere")
    assert code == 2


def test_budget_exceeded():
    code, report = call("axioms", corpus("wedge"), "--budget", "50")
    assert code == 1
    assert report["status"] == "budget-exceeded"
    assert report["result"]["partial"]["checked"]


@pytest.mark.parametrize("command", sorted(COMMANDS))
def test_byte_identical_runs(command):
    argv = [command, corpus("ptmax"), "--bound", "2", "--arity", "2"]
    if command == "component":
        argv += ["--target", "pt", "--profile", "pt,pt"]
    if command == "compose":
        argv += ["--outer", "pt/2,1/id_pt,id_pt", "--inner", "pt//", "--inner", "pt/1/id_pt"]
    first = run(argv)
    assert run(argv) == first
    assert json.loads(first[1])["command"] == command


def test_fixtures_listing(capsys):
    assert main(["--fixtures"]) == 0
    listing = json.loads(capsys.readouterr().out)["fixtures"]
    assert listing["vee"] == ["c1", "c2"]


def test_console_script_stdin():
    text = (DATA / "vee.oc").read_text()
    proc = subprocess.run(
        [sys.executable, "-m", "orthoperad.cli", "jclosed", "-", "--object", "d"],
        input=text,
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["result"]["d"] is False
