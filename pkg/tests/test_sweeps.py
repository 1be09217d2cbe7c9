import pytest

from thompsonf import sweeps


@pytest.mark.parametrize(
    "name, size",
    [
        ("oracle", 6),
        ("normalize", 6),
        ("flow-bound", 7),
        ("inverse-edge", 7),
        ("claim-star", 7),
        ("flow-termination", 4),
        ("nf-automaton", 8),
        ("graph-phi", 5),
        ("cell-count", 6),
        ("solve", 5),
    ],
)
def test_small_sweeps_pass(name, size):
    res = sweeps.run_suite(name, size)
    assert res.ok, res.failures
    assert res.line().startswith(f"PASS  {name}")


def test_normal_form_counts():
    # golden counts of normal forms by maximum length
    assert [sum(1 for _ in sweeps.normal_form_words(k)) for k in (0, 1, 2, 6, 8)] == [1, 5, 17, 1029, 7125]


def test_reachable_elements_small():
    assert len(sweeps.reachable_elements(0, 2)) == 1 + 4 + 12


def test_failures_are_capped():
    res = sweeps.SweepResult("demo")
    for k in range(50):
        res.fail(str(k))
    assert res.n_failures == 50 and len(res.failures) == sweeps.MAX_REPORTED and not res.ok
