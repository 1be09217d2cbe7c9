import pytest

from thompsonf.normal_form import NormalForm
from thompsonf.ordering import Edge
from thompsonf.words import parse


def nf_of(text: str) -> NormalForm:
    return NormalForm.from_word(parse(text))


def edge(text: str, a: str) -> Edge:
    return Edge(nf_of(text), parse(a))


@pytest.fixture
def make_edge():
    return edge
