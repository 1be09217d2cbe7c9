import pytest
from hypothesis import given, strategies as st

from thompsonf.words import (
    Generator,
    RunWord,
    WordSyntaxError,
    commutator,
    format_word,
    free_reduce,
    invert,
    is_freely_reduced,
    parse,
    words_up_to,
)

words = st.text(alphabet="xXyY", max_size=14)


@pytest.mark.parametrize(
    "text, expected",
    [
        ("yxy", "yxy"),
        ("x^-2yx^2", "XXyxx"),
        ("", ""),
        ("1", ""),
        ("x^-1", "X"),
        ("(xy)^2", "xyxy"),
        ("(xy)^-1", "YX"),
        ("[y,xyx^-2]", "YxxYXyxyXX"),
        (" y x ^ 3 ", "yxxx"),
        ("x^0y", "y"),
    ],
)
def test_parse(text, expected):
    assert parse(text) == expected


@pytest.mark.parametrize("text, pos", [("xz", 2), ("x^", 3), ("[x,y", 5), ("(x", 3)])
def test_parse_errors_report_position(text, pos):
    with pytest.raises(WordSyntaxError) as info:
        parse(text)
    assert info.value.position == pos


@pytest.mark.parametrize(
    "w, expected", [("xX", ""), ("yxXY", ""), ("yxy", "yxy"), ("xXxXy", "y"), ("XyYx", "")]
)
def test_free_reduce(w, expected):
    assert free_reduce(w) == expected


@pytest.mark.parametrize("w, expected", [("yx", "XY"), ("", ""), ("xx", "XX")])
def test_invert(w, expected):
    assert invert(w) == expected


def test_commutator_convention():
    assert commutator("y", "x") == "YXyx"


def test_generator_enum():
    g = Generator.parse("y^-1")
    assert g.letter == "Y" and g.inverse.letter == "y" and g.sign == -1
    assert Generator.from_letter("x").base == "x"


def test_format_word():
    assert format_word("XXyxx") == "x^-2yx^2"
    assert format_word("yxY") == "yxY"
    assert format_word("", "1") == "1"


def test_words_up_to_counts():
    assert sum(1 for _ in words_up_to(4)) == 1 + 4 + 16 + 64 + 256
    assert sum(1 for _ in words_up_to(4, reduced=True)) == 1 + 4 + 12 + 36 + 108


def test_small_words_exhaustive():
    for w in words_up_to(7):
        r = free_reduce(w)
        assert free_reduce(r) == r and len(r) <= len(w)
        assert is_freely_reduced(r)
        assert parse(format_word(w)) == w
        assert invert(invert(w)) == w


@given(words)
def test_free_reduce_idempotent(w):
    r = free_reduce(w)
    assert free_reduce(r) == r
    assert len(r) <= len(w)
    assert free_reduce(w + invert(w)) == ""


@given(words)
def test_print_parse_round_trip(w):
    assert parse(format_word(w)) == w


@given(words)
def test_run_word_round_trip(w):
    assert RunWord.from_word(free_reduce(w)).to_word() == free_reduce(w)
    assert len(RunWord.from_word(free_reduce(w))) == len(free_reduce(w))
