"""Generators, words and the text format used everywhere in the package.

A word is a plain ``str`` over the four letters ``x X y Y``, where the
capital letter is the inverse generator.  Keeping words as strings makes
them hashable, cheap to slice and easy to print, which matters for the
exhaustive sweeps.

Text grammar accepted by :func:`parse`::

    word  := item*
    item  := atom ('^' integer)?
    atom  := 'x' | 'X' | 'y' | 'Y' | '1' | '(' word ')' | '[' word ',' word ']'

``[u,v]`` is the commutator ``u^-1 v^-1 u v`` and ``1`` is the empty word.
Whitespace is ignored.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass
from typing import Iterator

LETTERS = "xXyY"

_INVERSE = {"x": "X", "X": "x", "y": "Y", "Y": "y"}


class Generator(enum.Enum):
    X = "x"
    X_INV = "X"
    Y = "y"
    Y_INV = "Y"

    @property
    def base(self) -> str:
        return self.value.lower()

    @property
    def sign(self) -> int:
        return 1 if self.value.islower() else -1

    @property
    def inverse(self) -> "Generator":
        return Generator(_INVERSE[self.value])

    @property
    def letter(self) -> str:
        return self.value

    @classmethod
    def from_letter(cls, letter: str) -> "Generator":
        return cls(letter)

    @classmethod
    def parse(cls, text: str) -> "Generator":
        """Parse a single generator such as ``y``, ``Y`` or ``y^-1``."""
        w = parse(text)
        if len(w) != 1:
            raise WordSyntaxError(f"expected a single generator, got {text!r}", 1)
        return cls(w)

    def __str__(self) -> str:
        return self.value


class WordSyntaxError(ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


def inverse_letter(a: str) -> str:
    return _INVERSE[a]


def letter(base: str, sign: int) -> str:
    return base if sign > 0 else base.upper()


def power(base: str, k: int) -> str:
    """The word ``base^k`` as a flat string."""
    return (base if k > 0 else base.upper()) * abs(k)


def invert(w: str) -> str:
    return "".join(_INVERSE[a] for a in reversed(w))


def free_reduce(w: str) -> str:
    out: list[str] = []
    for a in w:
        if out and out[-1] == _INVERSE[a]:
            out.pop()
        else:
            out.append(a)
    return "".join(out)


def is_freely_reduced(w: str) -> bool:
    return all(w[k + 1] != _INVERSE[w[k]] for k in range(len(w) - 1))


def commutator(u: str, v: str) -> str:
    return invert(u) + invert(v) + u + v


# --- run-length form --------------------------------------------------------


@dataclass(frozen=True)
class RunWord:
    """Run-length encoding: ``((base, exponent), ...)`` with nonzero exponents
    and distinct bases in adjacent runs."""

    runs: tuple[tuple[str, int], ...]

    def __post_init__(self):
        for k, (base, e) in enumerate(self.runs):
            if base not in ("x", "y") or e == 0:
                raise ValueError(f"bad run {(base, e)!r}")
            if k and self.runs[k - 1][0] == base:
                raise ValueError("adjacent runs share a base")

    @classmethod
    def from_word(cls, w: str) -> "RunWord":
        runs: list[list] = []
        for a in w:
            base, sign = a.lower(), (1 if a.islower() else -1)
            if runs and runs[-1][0] == base:
                runs[-1][1] += sign
                if runs[-1][1] == 0:
                    runs.pop()
            else:
                runs.append([base, sign])
        return cls(tuple((b, e) for b, e in runs))

    def to_word(self) -> str:
        return "".join(power(b, e) for b, e in self.runs)

    def __len__(self) -> int:
        return sum(abs(e) for _, e in self.runs)


# --- printing and parsing ---------------------------------------------------


def format_word(w: str, empty: str = "") -> str:
    """Canonical print form: ``x X y Y`` for single letters, ``x^k`` for runs
    of two or more identical letters (``x^-3`` for ``XXX``)."""
    if not w:
        return empty
    parts = []
    for a, group in itertools.groupby(w):
        k = len(list(group))
        if k == 1:
            parts.append(a)
        else:
            parts.append(f"{a.lower()}^{k if a.islower() else -k}")
    return "".join(parts)


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def error(self, message: str) -> WordSyntaxError:
        return WordSyntaxError(message, self.pos + 1)

    def skip(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def word(self, closers: str) -> str:
        parts = []
        while True:
            c = self.peek()
            if c == "" or c in closers:
                return "".join(parts)
            parts.append(self.item())

    def item(self) -> str:
        atom = self.atom()
        if self.peek() == "^":
            self.pos += 1
            return self.raise_power(atom, self.integer())
        return atom

    def atom(self) -> str:
        c = self.peek()
        if c in LETTERS:
            self.pos += 1
            return c
        if c == "1":
            self.pos += 1
            return ""
        if c == "(":
            self.pos += 1
            inner = self.word(")")
            self.expect(")")
            return inner
        if c == "[":
            self.pos += 1
            u = self.word(",]")
            self.expect(",")
            v = self.word("]")
            self.expect("]")
            return commutator(u, v)
        raise self.error(f"unexpected {c!r}" if c else "unexpected end of input")

    def expect(self, c: str):
        if self.peek() != c:
            raise self.error(f"expected {c!r}")
        self.pos += 1

    def integer(self) -> int:
        self.skip()
        start = self.pos
        if self.pos < len(self.text) and self.text[self.pos] in "+-":
            self.pos += 1
        digits = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if self.pos == digits:
            self.pos = start
            raise self.error("expected an integer exponent")
        return int(self.text[start:self.pos])

    @staticmethod
    def raise_power(w: str, k: int) -> str:
        return w * k if k >= 0 else invert(w) * (-k)


def parse(text: str) -> str:
    """Parse the text format into a flat word.

    >>> parse("x^-2yx^2")
    'XXyxx'
    """
    p = _Parser(text)
    w = p.word("")
    if p.peek():
        raise p.error(f"unexpected {p.peek()!r}")
    return w


def words_up_to(max_len: int, reduced: bool = False) -> Iterator[str]:
    """All words of length <= max_len in shortlex order, optionally only the
    freely reduced ones."""
    level = [""]
    yield ""
    for _ in range(max_len):
        nxt = []
        for w in level:
            for a in LETTERS:
                if reduced and w and w[-1] == _INVERSE[a]:
                    continue
                nxt.append(w + a)
        yield from nxt
        level = nxt
