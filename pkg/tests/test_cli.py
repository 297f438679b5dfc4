import io
import json
import os
import subprocess
import sys

import pytest

from triact.cli import EXIT_BUDGET, EXIT_OK, EXIT_USAGE, EXIT_VIOLATION, main, parse_pipeline
from triact.autos import rooted_isomorphic
from triact import make


def run(*argv, env=None):
    out, err = io.StringIO(), io.StringIO()
    code = main(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def test_generate_dot():
    code, out, _ = run("generate", "--family", "theta", "--s", "1", "--radius", "5", "--format", "dot")
    assert code == EXIT_OK
    assert out.startswith("graph ") and 'color="red"' in out and 'color="blue"' in out


def test_classify():
    code, out, _ = run("classify", "--family", "colored-t3", "--radius", "4")
    assert code == EXIT_OK and out.strip() == "CaseC"
    code, out, _ = run("classify", "--family", "oriented-t3", "--format", "json")
    assert json.loads(out)["case"] == "CaseB"


def test_verify_all_theta0():
    code, out, _ = run("verify-all", "--family", "theta", "--s", "0", "--radius", "8")
    assert code == EXIT_OK, out
    code, out, _ = run("verify-all", "--family", "theta(0)", "--radius", "8", "--format", "json")
    doc = json.loads(out)
    assert doc["ok"] and set(doc["checks"]) == {"classify", "no_alternating_cycles", "transitivity",
                                                "ends", "contraction"}


def test_usage_errors():
    assert run()[0] == EXIT_USAGE
    assert run("classify")[0] == EXIT_USAGE
    assert run("classify", "--family", "nope")[0] == EXIT_USAGE
    assert run("classify", "--family", "theta")[0] == EXIT_USAGE
    assert run("classify", "--family", "t3", "--s", "1")[0] == EXIT_USAGE
    assert run("classify", "--family", "theta(1)", "--s", "1")[0] == EXIT_USAGE
    assert run("classify", "--family", "t3", "--format", "dot")[0] == EXIT_USAGE
    assert run("generate", "--pipeline", "t3 | frobnicate")[0] == EXIT_USAGE
    assert run("generate", "--family", "t3", "--center", "(0,0)")[0] == EXIT_USAGE
    assert run("ends", "--family", "t3", "--inner", "2")[0] == EXIT_USAGE
    assert run("star-check", "--family", "t3")[0] == EXIT_USAGE


def test_budget_exit(monkeypatch):
    monkeypatch.setenv("TRIACT_BUDGET", "100")
    code, _, err = run("generate", "--family", "t3", "--radius", "8")
    assert code == EXIT_BUDGET and "budget" in err


def test_violation_exit():
    # too few windows to decide: reported, exit 1
    code, out, _ = run("ends", "--family", "rotation-tree(4)", "--r-max", "2")
    assert code == EXIT_VIOLATION and "inconclusive" in out
    # a failed growth hypothesis is a finding, not a violation
    assert run("trofimov", "--family", "theta(0)", "--depth", "3")[0] == EXIT_OK


def test_pipeline():
    g = parse_pipeline("delta-p(2) | bs(1) | star")
    assert rooted_isomorphic(g, make("theta(1)"), 5)
    g = parse_pipeline("t3 | split(3) | contract(blue-components)")
    assert rooted_isomorphic(g, make("t3"), 4)
    g = parse_pipeline("oriented-t3 | reverse | undirected")
    assert rooted_isomorphic(g, make("t3"), 4)
    assert parse_pipeline("colored-t3 | power(2)").degree == 9
    code, out, _ = run("classify", "--pipeline", "delta-p(2) | bs(2) | star")
    assert out.strip() == "CaseC"


JSON_RUNS = [
    ("generate", "--family", "theta(1)", "--radius", "3"),
    ("classify", "--family", "t3"),
    ("local-action", "--family", "colored-t3"),
    ("orbit", "--family", "t3", "--line-index", "3"),
    ("alt-arcs", "--family", "colored-t3", "--length", "3"),
    ("alt-arcs", "--family", "theta(1)", "--length", "2", "--first-color", "blue"),
    ("scale", "--family", "oriented-t3", "--n-max", "5"),
    ("ends", "--family", "strip", "--r-max", "6"),
    ("trofimov", "--family", "colored-t3", "--depth", "3"),
    ("dichotomy", "--family", "theta(1)", "--n-max", "4"),
]


@pytest.mark.parametrize("argv", JSON_RUNS, ids=[a[0] for a in JSON_RUNS])
def test_json_stable_with_headers(argv):
    argv = list(argv) + ["--format", "json"]
    code, a, _ = run(*argv)
    code2, b, _ = run(*argv)
    assert code == code2 == EXIT_OK
    assert a == b
    doc = json.loads(a)
    assert doc["invocation"].startswith("triact " + argv[0])
    assert set(doc["limits"]) == {"vertices", "nodes", "blocks"}
    assert a == json.dumps(doc, sort_keys=True, indent=2) + "\n"


def test_json_schemas():
    jsonschema = pytest.importorskip("jsonschema")
    from triact.schemas import ALT_ARCS, BALL, HEADER, with_header

    _, out, _ = run("generate", "--family", "oriented-t3", "--radius", "3", "--format", "json")
    jsonschema.validate(json.loads(out), with_header(BALL))
    _, out, _ = run("alt-arcs", "--family", "theta(0)", "--length", "4", "--format", "json")
    jsonschema.validate(json.loads(out), with_header(ALT_ARCS))
    jsonschema.validate(json.loads(out), HEADER)


def test_limits_echo_env(monkeypatch):
    monkeypatch.setenv("TRIACT_BUDGET", "vertices=5000,nodes=123")
    _, out, _ = run("classify", "--family", "t3", "--format", "json")
    assert json.loads(out)["limits"] == {"vertices": 5000, "nodes": 123, "blocks": 10000}


def test_console_script_subprocess():
    cmd = [sys.executable, "-m", "triact.cli", "classify", "--family", "t3"]
    a = subprocess.run(cmd, capture_output=True, text=True)
    b = subprocess.run(cmd, capture_output=True, text=True)
    assert a.returncode == 0 and a.stdout == b.stdout == "CaseA\n"
