import pytest

from thompsonf import diagrams as D
from thompsonf.normal_form import PreconditionError
from thompsonf.ordering import c_seq, weight
from thompsonf.sweeps import non_tree_edges
from thompsonf.words import free_reduce, invert, parse

from conftest import edge


@pytest.mark.parametrize("k", range(1, 9))
def test_filled_boxes(k):
    cx = D.box_complex(k)
    assert len(cx.cells) == c_seq(k)
    assert cx.problems() == []
    assert cx.read(cx.outer) == D.box_word(k)
    fb = D.filled_box(k)
    fb.check_structure()
    assert fb.cell_count == c_seq(k)


def test_box_word_is_a_commutator():
    # every box boundary spells the identity
    from thompsonf.oracle import same_element

    for k in range(1, 6):
        assert same_element(D.box_word(k), "")
        assert D.box_size_of_cycle(D.box_word(k)) == (k, False, 0)
        assert D.box_size_of_cycle(invert(D.box_word(k)))[:2] == (k, True)
    assert D.box_size_of_cycle("xyXY") is None


def test_fill_chain_children():
    fb = D.filled_box(5)
    assert [c.size for c in fb.children] == [3, 4, 1, 1, 3]


@pytest.mark.parametrize("src, sizes, cells", [("yx", (1,), 1), ("yx^3", (3,), 5), ("x^2Yx Y x^-2 y x^4", (4, 2, 3), 15)])
def test_box_diagrams(src, sizes, cells):
    e = edge(src, "y")
    d = D.box_diagram(e)
    assert d.sizes == sizes
    assert D.cell_count(e) == cells == weight(e) == D.cell_count_formula(d)
    assert D.validate(e) == []
    assert D.validate(e, filled=False) == []
    assert len(D.unfilled(d).cells) == len(sizes)


def test_figure_configuration():
    d = D.box_diagram(edge("x^2Yx Y x^-2 y x^4", "y"))
    assert [b.crossing_sign for b in d.boxes] == [1, -1, -1]
    assert d.prefix_path == "xx"
    assert d.side_label(0) == parse("x^4yx^-5")
    assert free_reduce(d.boundary_word) == free_reduce(parse("x^2Yx Y x^-2 y x^4 y") + invert(d.edge.target.word))


def test_y_inverse_edges():
    for e in non_tree_edges(6, "Y"):
        d = D.box_diagram(e)
        assert D.cell_count(e) == weight(e)
        assert D.validate(e) == []
        assert all(b.crossing_sign in (1, -1) for b in d.boxes)


def test_cell_count_equals_weight_small():
    for e in non_tree_edges(6, "y"):
        assert D.cell_count(e) == weight(e)


def test_tree_edges_have_no_diagram():
    with pytest.raises(PreconditionError):
        D.box_diagram(edge("y", "x"))


def test_dot_and_stats():
    e = edge("yx^3", "y")
    dot = D.fill(D.box_diagram(e)).to_dot()
    assert dot.startswith("digraph diagram {") and dot.rstrip().endswith("}")
    assert dot.count("->") == D.stats(e)["edges"]
    st = D.stats(e)
    assert st["boxes"] == [3] and st["cells"] == 5 and st["boundary_length"] == len(D.box_diagram(e).boundary_word)


def test_cells_add_up_over_boxes():
    assert sum(len(D.box_complex(k).cells) for k in (4, 2, 1)) == 11
