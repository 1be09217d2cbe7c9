import io
import json
import random

import pytest

from thompsonf import oracle
from thompsonf.automata import DFA, nf_automaton
from thompsonf.cli import run
from thompsonf.words import format_word, words_up_to


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def test_nf():
    assert call("nf", "yxy") == (0, "xyx^-2yx^2\n", "")
    code, out, _ = call("nf", "--trace", "yxy")
    assert code == 0 and out.splitlines()[0].split()[:2] == ["1", "y-rule(1)"]


def test_solve():
    assert call("solve", "[y,xyx^-2]", "")[1] == "equal\n"
    assert call("solve", "x", "y")[1] == "not equal\n"


def test_solve_agrees_with_oracle():
    rng = random.Random(3)
    pool = list(words_up_to(6))
    for _ in range(300):
        u, v = rng.choice(pool), rng.choice(pool)
        code, out, _ = call("solve", format_word(u, "1"), format_word(v, "1"))
        assert code == 0
        assert (out == "equal\n") == oracle.same_element(u, v)


def test_flow_and_weight():
    code, out, _ = call("flow", "yx", "y")
    assert code == 0
    assert "phi       XYxyx^-2yx^2" in out.splitlines()
    assert "endpoint  ok" in out.splitlines()
    code, out, _ = call("weight", "x^2Yx Y x^-2 y x^4", "y")
    assert code == 0 and out.splitlines() == ["sigma   (4, 2, 3)", "weight  15"]


def test_flow_iterate():
    code, out, _ = call("flow-iterate", "1", "yxy")
    assert code == 0 and out.splitlines()[-1] == "n_p 1"
    code, out, _ = call("flow-iterate", "1", "[y,xyx^-2]", "--max-iter", "0")
    assert code == 2


def test_rewrite_trace():
    code, out, _ = call("rewrite", "--trace", "yxy")
    lines = out.splitlines()
    assert code == 0 and lines[0].startswith("2.y1") and "N/yx" in lines[0] and lines[-1] == "xyx^-2yx^2"


def test_fsa_export(tmp_path):
    path = tmp_path / "nf.tsv"
    code, out, _ = call("fsa", "export", "--which", "nf", "--out", str(path))
    assert code == 0 and "8 states" in out
    assert DFA.from_export(path.read_text()) == nf_automaton()


def test_diagram():
    code, out, _ = call("diagram", "yx^3", "y", "--stats")
    assert code == 0 and "cells            5" in out
    code, out, _ = call("diagram", "yx^3", "y", "--format", "dot")
    assert code == 0 and out.startswith("digraph")


def test_oracle_eval():
    assert call("oracle", "eval", "x") == (0, "(0,0) (1/2,1/4) (3/4,1/2) (1,1)\n", "")


def test_verify():
    code, out, _ = call("verify", "--suite", "claim-star", "--max-len", "6")
    assert code == 0 and out.startswith("PASS  claim-star")


def test_json():
    code, out, _ = call("--json", "weight", "yx^3", "y")
    assert code == 0 and json.loads(out) == {"edge": "(yx^3, y)", "sigma": [3], "weight": 5}
    code, out, _ = call("--json", "nf", "yz")
    assert code == 1 and "error" in json.loads(out)


@pytest.mark.parametrize(
    "argv",
    [("nf", "xz"), ("weight", "y", "x"), ("flow", "yx", "xy"), ("bogus",), ("nf",), ("verify", "--suite", "nope")],
)
def test_domain_and_usage_errors_exit_1(argv):
    code, out, err = call(*argv)
    assert code == 1 and out == "" and err.startswith("thompsonf:")


def test_budget_error_exit_1(monkeypatch):
    from thompsonf import cprs

    monkeypatch.setattr(cprs, "DEFAULT_STEP_BUDGET", 2)
    assert call("rewrite", "[y,x^2yx^-3]")[0] == 1
