import re

import pytest
from hypothesis import given, strategies as st

from thompsonf import cprs
from thompsonf.normal_form import is_normal_form, sigma_normalize
from thompsonf.words import LETTERS, format_word, parse, words_up_to

from conftest import nf_of

GUARD_LONG = re.compile(r".*[yY].*xx")


def test_rule_families():
    rs = cprs.rules()
    assert len(rs) == 14
    fam = {f: [r for r in rs if r.family == f] for f in range(1, 6)}
    assert sorted(r.lhs for r in fam[1]) == sorted(["xX", "Xx", "yY", "Yy"])
    assert all(r.guard_name == "any" for r in fam[1])
    r = next(r for r in fam[2] if r.rule_id == "2.y1")
    assert (r.lhs, r.rhs, r.guard_name) == ("yxy", parse("xyx^-2yx^2"), "N/yx")
    assert {r.lhs for r in fam[3]} == {"yxxY", "yxxxY", "YxxY", "YxxxY"}
    assert (fam[4][0].lhs, fam[4][0].rhs) == ("xy", parse("y^-1xyx^-2yx^2"))
    assert (fam[5][0].lhs, fam[5][0].rhs) == ("xxY", parse("y^-1x^2y^-1x^-1yx"))
    for r in rs:
        assert len(r.lhs) <= 5 and len(r.rhs) <= 10
        assert r.describe().startswith(r.rule_id)


def test_guard_languages():
    for u in words_up_to(7):
        for r in cprs.rules():
            g = r.guard.accepts(u)
            if r.guard_name == "any":
                assert g
            elif r.guard_name.startswith("N/"):
                assert g == is_normal_form(u + r.guard_name[2:]), (u, r.rule_id)
            else:
                assert g == (is_normal_form(u) and GUARD_LONG.fullmatch(u) is not None), u


def test_rule_sides_are_equal_in_f():
    from thompsonf.oracle import same_element

    for r in cprs.rules():
        assert same_element(r.lhs, r.rhs), r.rule_id


@pytest.mark.parametrize(
    "w, expected",
    [("yxy", (parse("xyx^-2yx^2"), "2.y1", 3)), ("XyXXyxx", None), ("xxX", ("x", "1.x", 3))],
)
def test_rewrite_once(w, expected):
    assert cprs.rewrite_once(w) == expected


def test_rewrite_once_fires_exactly_off_n():
    for w in words_up_to(7):
        assert (cprs.rewrite_once(w) is None) == is_normal_form(w), w


def test_rewrite_to_irreducible_examples():
    assert tuple(cprs.rewrite_to_irreducible("")) == ("", 0)
    word, steps = cprs.rewrite_to_irreducible("yxy")
    assert format_word(word) == "xyx^-2yx^2" and steps == 1
    word, steps = cprs.rewrite_to_irreducible(parse("[y,x^2yx^-3]"))
    assert word == "" and steps > 0


def test_agrees_with_standard_derivation():
    for w in words_up_to(7):
        assert cprs.rewrite_to_irreducible(w).word == sigma_normalize(w, record=False)[0].word, w


def test_trace_is_replayable():
    res = cprs.rewrite_to_irreducible(parse("yx^3yxY"), trace=True)
    w = parse("yx^3yxY")
    for st in res.trace:
        assert st.before == w
        nxt, rule_id, split = cprs.rewrite_once(w)
        assert (rule_id, split, nxt) == (st.rule.rule_id, st.split, st.after)
        assert st.before[: st.split] == st.prefix + st.rule.lhs
        assert st.rule.guard.accepts(st.prefix)
        w = nxt
    assert w == res.word and res.steps == len(res.trace)
    assert "u=" in res.trace[0].render()


def test_step_budget():
    with pytest.raises(cprs.StepBudgetExceeded):
        cprs.rewrite_to_irreducible(parse("[y,x^2yx^-3]"), budget=3)


@given(st.text(alphabet=LETTERS, max_size=10), st.text(alphabet=LETTERS, max_size=10))
def test_rewriter_resumes(u, v):
    a = cprs.PrefixRewriter().feed(u).feed(v).result()
    b = cprs.rewrite_to_irreducible(u + v)
    assert (a.word, a.steps) == (b.word, b.steps)


@pytest.mark.parametrize(
    "src, a, label",
    [("yx", "y", "x^-1y^-1xyx^-2yx^2"), ("y", "x", "x"), ("yx^3", "y", "x^-1y^-1xyx^-2yx^2")],
)
def test_graph_phi(src, a, label):
    t = cprs.graph_phi(nf_of(src), a)
    assert t.words() == (parse(src), a, parse(label))
    assert cprs.in_graph_phi(*t.words())
    assert not cprs.in_graph_phi(parse(src), a, "y")
    assert len(t.padded()) == max(map(len, t.words()))
