"""Directed Cayley-graph edges, size sequences, weights and the edge order."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

from .normal_form import (
    NormalForm,
    PreconditionError,
    edge_in_tree,
    is_normal_form,
    multiply,
    sigma_normalize,
)
from .words import Generator, format_word, free_reduce, inverse_letter

_C = [0, 1, 1]


def c_seq(i: int) -> int:
    """C(1) = C(2) = 1, C(i) = C(i-1) + 2 C(i-2) + 2."""
    if i < 1:
        raise ValueError(f"C is defined for i >= 1, got {i}")
    while len(_C) <= i:
        _C.append(_C[-1] + 2 * _C[-2] + 2)
    return _C[i]


def c_closed_form(i: int) -> int:
    # (2/3) 2^i - (2/3) (-1)^i - 1, kept integral
    return (2 ** (i + 1) - 2 * (-1) ** i) // 3 - 1


@dataclass(frozen=True)
class Edge:
    source: NormalForm
    label: str  # one letter of "xXyY"

    def __post_init__(self):
        if isinstance(self.label, Generator):
            object.__setattr__(self, "label", self.label.letter)
        if self.label not in ("x", "X", "y", "Y"):
            raise ValueError(f"bad edge label {self.label!r}")

    @classmethod
    def of(cls, word: str, label) -> "Edge":
        from .normal_form import nf

        lab = label.letter if isinstance(label, Generator) else label
        return cls(nf(word), lab)

    @cached_property
    def target(self) -> NormalForm:
        return multiply(self.source, self.label)

    @cached_property
    def in_tree(self) -> bool:
        return edge_in_tree(self.source, self.label)

    @property
    def inverse(self) -> "Edge":
        return Edge(self.target, inverse_letter(self.label))

    def __str__(self) -> str:
        return f"({format_word(self.source.word, '1')}, {self.label})"


def in_tree(source: NormalForm, a: str) -> bool:
    """The edge lies in T iff the free reduction of ``source * a`` is a normal
    form.  This is the definition; :class:`Edge` uses the equivalent test on
    run data, and the two are compared in the test suite."""
    return is_normal_form(free_reduce(source.word + a))


def size_sequence(e: Edge) -> tuple[int, ...]:
    """Rule sizes crossed by a non-tree y^{+-1} edge, read off the source profile."""
    if e.in_tree:
        raise PreconditionError(f"edge {e} lies in the tree")
    prof = e.source.profile
    if e.label == "y":
        return prof.s[: prof.m]
    return tuple(v - 1 for v in prof.s[: prof.m_prime])


def size_sequence_bruteforce(e: Edge) -> tuple[int, ...]:
    """Rule sizes taken from an actual standard derivation of ``source * label``."""
    if e.in_tree:
        raise PreconditionError(f"edge {e} lies in the tree")
    _, deriv = sigma_normalize(e.source.word + e.label, record=False)
    return tuple(deriv.rule_sizes(e.label))


def weight(e: Edge) -> int:
    return sum(c_seq(s) for s in size_sequence(e))


def weight_bruteforce(e: Edge) -> int:
    return sum(c_seq(s) for s in size_sequence_bruteforce(e))


def precedes(e1: Edge, e2: Edge) -> bool:
    return weight(e1) < weight(e2)
