"""Acceptance suite: every criterion at full size, exact.

Each test prints one ``PASS``/``FAIL`` line (also visible under output
capture).  Run ``pytest tests/test_acceptance.py -v`` or execute this file
directly.
"""

import random
import sys
import time
from fractions import Fraction
from functools import lru_cache

import pytest

from thompsonf import diagrams, oracle, sweeps
from thompsonf.flow import BOUND, DEFAULT_MAX_ITER, DirectedPath, FlowDepth, flow_to_tree
from thompsonf.normal_form import relators
from thompsonf.ordering import c_closed_form, c_seq
from thompsonf.words import parse

from conftest import edge


@lru_cache(maxsize=None)
def normalize_sweep_10():
    return sweeps.normalize_sweep(10)


@pytest.fixture
def report(capsys):
    def emit(criterion: int, ok: bool, detail: str, started: float):
        line = f"{'PASS' if ok else 'FAIL'}  criterion {criterion}: {detail} ({time.time() - started:.1f}s)"
        with capsys.disabled():
            print("\n" + line, flush=True)
        assert ok, line

    return emit


def test_criterion_1_oracle_consistency(report):
    t = time.time()
    ids = [oracle.evaluate(r) == oracle.IDENTITY_MAP for r in relators()]
    res = sweeps.oracle_sweep(10)
    report(1, all(ids) and res.ok, f"relators trivial={all(ids)}; {res.summary()}", t)


def test_criterion_2_three_way_normalization(report):
    t = time.time()
    res = normalize_sweep_10()
    report(2, res.ok and res.checked == sum(4**k for k in range(11)), res.summary(), t)


def test_criterion_3_boundedness(report):
    t = time.time()
    norm = normalize_sweep_10()
    flow = sweeps.flow_bound_sweep(10)
    ok = norm.ok and flow.ok and norm.info["max_lhs"] <= 5 and norm.info["max_rhs"] <= 10
    ok = ok and flow.info["longest"] <= BOUND == 13
    detail = (
        f"rewrite steps replace <= {norm.info['max_lhs']} letters by <= {norm.info['max_rhs']}; "
        f"longest flow label {flow.info['longest']} over {flow.checked} edges"
    )
    report(3, ok, detail, t)


def test_criterion_4_inverse_edges(report):
    t = time.time()
    res = sweeps.inverse_edge_sweep(10)
    report(4, res.ok, res.summary(), t)


def test_criterion_5_claim_star(report):
    t = time.time()
    res = sweeps.claim_star_sweep(10)
    ok = res.ok and res.info["case_II"] > 0 and res.info["table_rows"] > 0
    report(5, ok, res.summary(), t)


def test_criterion_6_flow_termination(report):
    t = time.time()
    res = sweeps.flow_termination_sweep(6, 8, DEFAULT_MAX_ITER)
    # literal iteration on random paths as a cross-check of the per-edge reduction
    rng = random.Random(6)
    starts = list(sweeps.normal_forms(6))
    fd = FlowDepth()
    direct_ok = True
    for _ in range(2000):
        p = DirectedPath(rng.choice(starts), "".join(rng.choice("xXyY") for _ in range(rng.randrange(1, 9))))
        tr = flow_to_tree(p, DEFAULT_MAX_ITER)
        direct_ok &= tr.terminated and tr.n_p == fd.path_depth(p)
    detail = f"{res.summary()}; 2000 random paths iterated directly agree={direct_ok}"
    report(6, res.ok and direct_ok and res.info["max_n_p"] <= DEFAULT_MAX_ITER, detail, t)


def test_criterion_7_regularity(report):
    t = time.time()
    nfa = sweeps.nf_automaton_sweep(12)
    gp = sweeps.graph_phi_sweep(8, 1000)
    ok = nfa.ok and gp.ok and gp.info["negatives"] == 1000
    report(7, ok, f"{nfa.summary()}; {gp.summary()}", t)


def test_criterion_8_cells_and_weights(report):
    t = time.time()
    res = sweeps.cell_count_sweep(8)
    closed = all(
        c_seq(i) == c_closed_form(i) == Fraction(2, 3) * 2**i - Fraction(2, 3) * (-1) ** i - 1 for i in range(1, 31)
    )
    first = [c_seq(i) for i in (1, 2, 3, 4)]
    ok = res.ok and closed and first == [1, 1, 5, 9]
    report(8, ok, f"{res.summary()}; C recurrence = closed form for i<=30: {closed}; C(1..4)={first}", t)


def _sizes_by_definition(gamma: str):
    """Cumulative x-exponents from the right-hand end of the literal word, cut
    at the first nonpositive one (or after all y-letters)."""
    runs, cur = [], 0
    n = 0
    for a in reversed(gamma):
        if a in "xX":
            cur += 1 if a == "x" else -1
        else:
            runs.append(cur)
            cur, n = 0, n + 1
    runs.append(cur)
    s, total = [], 0
    for i in runs:
        total += i
        s.append(total)
    m = next((k for k, v in enumerate(s) if v <= 0), n)
    return tuple(s[:m])


def test_criterion_9_figure_configuration(report):
    t = time.time()
    gamma = parse("x^2Yx Y x^-2 y x^4")
    expected = _sizes_by_definition(gamma)
    d = diagrams.box_diagram(edge("x^2Yx Y x^-2 y x^4", "y"))
    cells = len(diagrams.fill(d).cells)
    ok = d.sizes == expected and len(d.boxes) == len(expected) and cells == sum(c_seq(k) for k in expected)
    report(9, ok, f"gamma=x^2Yx Y x^-2 y x^4: m={len(expected)} sizes by definition {expected}, module {d.sizes}, "
                  f"{cells} cells", t)


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-v"]))
