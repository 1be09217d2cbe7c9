import random

import pytest

from thompsonf.flow import (
    BOUND,
    DirectedPath,
    FlowDepth,
    flow_to_tree,
    inverse_path,
    phi,
    phi_hat,
    phi_label,
    table3_check,
    verify_claim_star,
)
from thompsonf.normal_form import IDENTITY, PreconditionError, is_normal_form, multiply
from thompsonf.ordering import Edge, weight
from thompsonf.sweeps import non_tree_edges, normal_forms, reachable_elements
from thompsonf.words import format_word, invert, parse, power

from conftest import edge, nf_of


def expected_label(e: Edge) -> str:
    """Flow label written out case by case from the word itself."""
    w = e.source.word
    if is_normal_form(w + e.label) or w.endswith(e.label.swapcase()):
        return e.label
    i = len(w) - len(w.rstrip("x"))
    eps = w[len(w) - i - 1]
    if e.label == "y":
        if i > 2:
            return parse("x^-1y^-1xyx^-2yx^2")
        return power("x", -i) + eps.swapcase() + power("x", i) + "y" + power("x", -i - 1) + eps + power("x", i + 1)
    if i > 3:
        return parse("x^-2y^-1x^2y^-1x^-1yx")
    return power("x", -i) + eps.swapcase() + power("x", i) + "Y" + power("x", -i + 1) + eps + power("x", i - 1)


@pytest.mark.parametrize(
    "src, a, label",
    [("yx", "y", "x^-1y^-1xyx^-2yx^2"), ("yx^3", "y", "x^-1y^-1xyx^-2yx^2"), ("y", "x", "x"), ("Yx^2", "Y", "x^-2yx^2Y x^-1 Y x")],
)
def test_phi_examples(src, a, label):
    assert phi_label(edge(src, a)) == parse(label)


def test_phi_against_case_table():
    for g in normal_forms(7):
        for a in "xXyY":
            e = Edge(g, a)
            assert phi_label(e) == expected_label(e), e
            p = phi(e)
            assert p.end == e.target and len(p) <= BOUND
            assert phi_label(e.inverse) == invert(p.label)


def test_phi_hat():
    p = DirectedPath(IDENTITY, "yxy")
    assert phi_hat(p).label == "yx" + parse("x^-1y^-1xyx^-2yx^2")
    assert phi_hat(p).end == p.end
    q = DirectedPath(nf_of("y"), "XyX")
    assert q.in_tree()
    assert phi_hat(q).label == q.label
    assert phi_hat(DirectedPath(IDENTITY, "")).label == ""


@pytest.mark.parametrize("label, n_p", [("yxy", 1), ("x^5", 0)])
def test_flow_to_tree(label, n_p):
    tr = flow_to_tree(DirectedPath(IDENTITY, parse(label)))
    assert tr.terminated and tr.n_p == n_p
    assert tr.iterations[-1].in_tree()


def test_flow_on_a_relator():
    tr = flow_to_tree(DirectedPath(IDENTITY, parse("[y,xyx^-2]")))
    assert tr.terminated
    assert tr.iterations[-1].end == IDENTITY


def test_flow_budget():
    tr = flow_to_tree(DirectedPath(IDENTITY, parse("[y,xyx^-2]")), max_iter=0)
    assert not tr.terminated


def test_claim_star_examples():
    rep = verify_claim_star(edge("yx^3", "y"))
    assert rep.ok and rep.case == "II" and rep.weight == 5
    assert [w for e, t, w in rep.checked if e.label == "y" or e.label == "Y"] == [1, 2, 1]
    for src in ("yx", "yx^2"):
        rep = verify_claim_star(edge(src, "y"))
        assert rep.ok and all(t for e, t, _ in rep.checked)
    assert table3_check(edge("yx^3", "y")) == []
    with pytest.raises(PreconditionError):
        verify_claim_star(edge("y", "x"))


def test_claim_star_small_range():
    for e in non_tree_edges(7):
        assert verify_claim_star(e).ok, e


def test_edge_depth_matches_iteration():
    fd = FlowDepth()
    rng = random.Random(1)
    starts = list(normal_forms(4))
    for _ in range(150):
        p = DirectedPath(rng.choice(starts), "".join(rng.choice("xXyY") for _ in range(rng.randrange(1, 7))))
        tr = flow_to_tree(p)
        assert tr.terminated and tr.n_p == fd.path_depth(p)


def test_truncated_depth_equals_full_depth():
    a, b = FlowDepth(), FlowDepth(truncate=False)
    for key in reachable_elements(4, 3):
        g = nf_of("")._trusted(*key)
        for c in "yY":
            assert a.depth(g, c) == b.depth(g, c)


def test_depth_is_one_more_than_the_deepest_child():
    fd = FlowDepth()
    for e in non_tree_edges(6):
        kids = [fd(e2) for e2 in phi(e).edges()]
        assert fd(e) == 1 + max(kids)


def test_inverse_path():
    p = DirectedPath(nf_of("yx"), "yxY")
    q = inverse_path(p)
    assert q.start == p.end and q.end == p.start
