"""Guba-Sapir normal forms for F over ``x X y Y``.

A normal form is stored run-length as ``x^{i_n} y^{e_n} ... x^{i_1} y^{e_1} x^{i_0}``
with ``exps[k] == i_k`` and ``signs[k - 1] == e_k``, i.e. indexed from the
right-hand end of the word, which is the end multiplication acts on.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from functools import cached_property
from typing import NamedTuple

from .words import Generator, RunWord, format_word, free_reduce, invert, power

DEFAULT_LENGTH_CAP = int(os.environ.get("THOMPSONF_LENGTH_CAP", 10**6))


class ResourceLimitError(RuntimeError):
    """Intermediate words grew past the configured cap."""


class PreconditionError(ValueError):
    pass


@dataclass(frozen=True)
class NormalForm:
    exps: tuple[int, ...] = (0,)
    signs: tuple[int, ...] = ()

    def __post_init__(self):
        n = len(self.signs)
        if len(self.exps) != n + 1:
            raise ValueError("need exactly one more x-exponent than y-letters")
        for j in range(1, n):
            i, e = self.exps[j], self.signs[j - 1]
            if i == 0 and e != self.signs[j]:
                raise ValueError(f"not freely reduced at y-letter {j}")
            if e == 1 and i > 0:
                raise ValueError(f"forbidden factor y^e x^{i} y at y-letter {j}")
            if e == -1 and i > 1:
                raise ValueError(f"forbidden factor y^e x^{i} y^-1 at y-letter {j}")

    @classmethod
    def _trusted(cls, exps: tuple[int, ...], signs: tuple[int, ...]) -> "NormalForm":
        """Skip validation; only for results that are normal forms by construction."""
        obj = object.__new__(cls)
        object.__setattr__(obj, "exps", exps)
        object.__setattr__(obj, "signs", signs)
        return obj

    @property
    def n(self) -> int:
        return len(self.signs)

    def eps(self, k: int) -> int:
        """Sign of the k-th y-letter from the right (1-based)."""
        return self.signs[k - 1]

    @cached_property
    def word(self) -> str:
        parts = [power("x", self.exps[self.n])]
        for k in range(self.n, 0, -1):
            parts.append("y" if self.signs[k - 1] > 0 else "Y")
            parts.append(power("x", self.exps[k - 1]))
        return "".join(parts)

    def __len__(self) -> int:
        return self.n + sum(abs(i) for i in self.exps)

    def __str__(self) -> str:
        return format_word(self.word)

    @classmethod
    def from_word(cls, w: str) -> "NormalForm":
        """Read off the exponents of a word that is already in normal form."""
        exps, signs = [0], []
        for a in reversed(w):
            if a in "xX":
                exps[-1] += 1 if a == "x" else -1
            else:
                signs.append(1 if a == "y" else -1)
                exps.append(0)
        nf = cls(tuple(exps), tuple(signs))
        if nf.word != w:
            raise ValueError(f"{w!r} is not freely reduced")
        return nf

    @cached_property
    def profile(self) -> "ExponentProfile":
        return profile(self)


IDENTITY = NormalForm()


class ExponentProfile(NamedTuple):
    s: tuple[int, ...]  # s[k] == s_k, cumulative from the right
    m: int
    m_prime: int


def profile(nf: NormalForm) -> ExponentProfile:
    s, total = [], 0
    for i in nf.exps:
        total += i
        s.append(total)
    m = next((k for k, v in enumerate(s) if v <= 0), nf.n)
    mp = next((k for k, v in enumerate(s) if v <= 1), nf.n)
    return ExponentProfile(tuple(s), m, mp)


# --- membership ---------------------------------------------------------------


def is_normal_form(w: str) -> bool:
    """True iff ``w`` contains no left-hand side of a Guba-Sapir rule.

    Checked through the run decomposition: freely reduced, and every x-run
    sitting strictly between two y-letters obeys the sign conditions.
    """
    exps, signs = [0], []
    prev = ""
    for a in reversed(w):
        if prev and prev == _inv(a):
            return False
        prev = a
        if a == "x" or a == "X":
            exps[-1] += 1 if a == "x" else -1
        else:
            signs.append(1 if a == "y" else -1)
            exps.append(0)
    for j in range(1, len(signs)):
        i, e = exps[j], signs[j - 1]
        if (e == 1 and i > 0) or (e == -1 and i > 1):
            return False
    return True


def _inv(a: str) -> str:
    return a.swapcase()


# --- standard Sigma-derivation ------------------------------------------------


class Step(NamedTuple):
    rule: str  # "free", "y", "Y"
    size: int  # rule size i (0 for free reductions)
    position: int  # 0-based index where the left-hand side starts
    before: str
    after: str

    @property
    def tag(self) -> str:
        if self.rule == "free":
            return "free-reduction"
        return f"{'y' if self.rule == 'y' else 'y^-1'}-rule({self.size})"


@dataclass
class Derivation:
    steps: list[Step] = field(default_factory=list)

    def rule_sizes(self, rule: str) -> list[int]:
        return [s.size for s in self.steps if s.rule == rule]

    def __len__(self):
        return len(self.steps)

    def render(self) -> str:
        lines = []
        for k, st in enumerate(self.steps, 1):
            lines.append(
                f"{k:4d}  {st.tag:<16} @{st.position:<4d} "
                f"{format_word(st.before, '1')} -> {format_word(st.after, '1')}"
            )
        return "\n".join(lines)


class SigmaRewriter:
    """Resumable form of the standard derivation.

    Letters are fed in from the right; the irreducible part to the left of the
    cursor is kept as a stack, so each step only inspects the stack top.
    Feeding ``u`` and then ``v`` performs exactly the steps of rewriting
    ``uv`` from scratch, which lets sweeps share work between words with a
    common prefix (see :meth:`copy`).
    """

    __slots__ = ("stack", "steps", "record", "keep", "cap")

    def __init__(self, record: bool = True, cap: int | None = None, keep: bool = True):
        self.stack: list[str] = []
        self.steps: list[Step] = []
        self.record = record
        self.keep = keep  # False: do not store steps at all
        self.cap = DEFAULT_LENGTH_CAP if cap is None else cap

    def copy(self) -> "SigmaRewriter":
        c = SigmaRewriter.__new__(SigmaRewriter)
        c.stack = list(self.stack)
        c.steps = list(self.steps)
        c.record, c.keep, c.cap = self.record, self.keep, self.cap
        return c

    def feed(self, w: str) -> "SigmaRewriter":
        stack = self.stack
        pending = list(reversed(w))
        record, keep = self.record, self.keep

        def snapshot(extra: str = "") -> str:
            return "".join(stack) + extra + "".join(reversed(pending))

        while pending:
            a = pending.pop()
            if stack and stack[-1] == _inv(a):
                pos = len(stack) - 1
                before = snapshot(a) if record else ""
                stack.pop()
                if keep:
                    self.steps.append(Step("free", 0, pos, before, snapshot() if record else ""))
                continue
            if (a == "y" or a == "Y") and stack and stack[-1] == "x":
                j = 0
                while j < len(stack) and stack[-1 - j] == "x":
                    j += 1
                if j < len(stack):  # a y-letter precedes the x-run
                    size = j if a == "y" else j - 1
                    if size >= 1:
                        eps = stack[-1 - j]
                        pos = len(stack) - 1 - j
                        before = snapshot(a) if record else ""
                        del stack[pos:]
                        if a == "y":
                            rhs = power("x", size) + "y" + power("x", -size - 1) + eps + power("x", size + 1)
                        else:
                            rhs = power("x", size + 1) + "Y" + power("x", -size) + eps + power("x", size)
                        pending.extend(reversed(rhs))
                        if len(stack) + len(pending) > self.cap:
                            raise ResourceLimitError(f"intermediate word exceeded {self.cap} letters")
                        if keep:
                            self.steps.append(Step(a, size, pos, before, snapshot() if record else ""))
                        continue
            stack.append(a)
        return self

    @property
    def word(self) -> str:
        return "".join(self.stack)


def sigma_normalize(w: str, record: bool = True, cap: int | None = None):
    """Rewrite ``w`` to its Guba-Sapir normal form.

    At every step the rule applied is the one ending earliest in the word (the
    shortest rewritable prefix).  Returns ``(NormalForm, Derivation)``; with
    ``record=False`` the derivation only keeps rule tags and positions.
    """
    r = SigmaRewriter(record, cap).feed(w)
    return NormalForm.from_word(r.word), Derivation(r.steps)


# --- closed-form multiplication -----------------------------------------------


def edge_in_tree(nf: NormalForm, a: str) -> bool:
    """Tree criterion on run data: only y-edges leaving a word ending in
    ``y^e x^i`` with i >= 1 (label y) or i >= 2 (label Y) leave the tree."""
    if a in "xX" or nf.n == 0:
        return True
    return nf.exps[0] < (1 if a == "y" else 2)


class NeedMore(LookupError):
    """A truncated normal form lacks a block that an operation must read."""


def multiply_blocks(exps: tuple, signs: tuple, a: str, more: bool = False) -> tuple[tuple, tuple]:
    """Block data of ``gamma * a``.

    ``exps``/``signs`` are the blocks of a normal form.  With ``more=True``
    they are only its lowest blocks, ``i_0..i_k`` and ``e_1..e_{k+1}``, with
    whatever lies above hidden; the result is then the matching truncation of
    the true product, or :class:`NeedMore` is raised when the answer depends
    on hidden blocks.  Non-tree y-edges use the closed formulas (no
    rewriting); everything else is a free reduction.
    """
    if a == "x" or a == "X":
        return (exps[0] + (1 if a == "x" else -1),) + exps[1:], signs
    b = 1 if a == "y" else -1
    i0 = exps[0]
    if not signs or i0 < (1 if b == 1 else 2):
        if signs and i0 == 0 and signs[0] == -b:
            if len(exps) < 2:
                raise NeedMore("cancelling the last visible y-letter")
            return exps[1:], signs[1:]
        return (0,) + exps, (b,) + signs
    # cutoff m: first k with s_k <= 0 (b = 1) or s_k <= 1 (b = -1)
    bar = 0 if b == 1 else 1
    s, total, m = [], 0, None
    for k, i in enumerate(exps):
        total += i
        s.append(total)
        if total <= bar:
            m = k
            break
    n = len(signs)
    if m is None:
        if more:
            raise NeedMore("cutoff lies in hidden blocks")
        m = n
    cancel = m < n and s[m] == 0 and signs[m] == -b
    low_x = (i0 + b,) + exps[1:m]
    if cancel:
        if m + 1 >= len(exps):
            raise NeedMore("merging with a hidden x-exponent")
        return low_x + (exps[m + 1] + exps[m] - b,) + exps[m + 2:], signs[:m] + signs[m + 1:]
    mid = -s[m - 1] - b
    return low_x + (mid, s[m]) + exps[m + 1:], signs[:m] + (b,) + signs[m:]


def multiply_y(nf: NormalForm, b: int) -> NormalForm:
    """Normal form of ``nf * y^b`` for an edge outside the tree, by the closed
    formulas (no rewriting)."""
    if nf.n == 0 or nf.exps[0] < (1 if b == 1 else 2):
        raise PreconditionError("edge lies in the normal-form tree")
    return NormalForm(*multiply_blocks(nf.exps, nf.signs, "y" if b == 1 else "Y"))


def multiply(nf: NormalForm, g) -> NormalForm:
    a = g.letter if isinstance(g, Generator) else g
    exps, signs = multiply_blocks(nf.exps, nf.signs, a)
    if a == "x" or a == "X":
        # the conditions only constrain i_1 .. i_{n-1}, so changing i_0 is always safe
        return NormalForm._trusted(exps, signs)
    return NormalForm(exps, signs)


def normalize_by_multiplication(w: str, start: NormalForm = IDENTITY) -> NormalForm:
    nf = start
    for a in w:
        nf = multiply(nf, a)
    return nf


def nf(w: str) -> NormalForm:
    """Normal form of an arbitrary word (fast path through multiplication)."""
    return normalize_by_multiplication(w)


def run_word(nf_: NormalForm) -> RunWord:
    return RunWord.from_word(nf_.word)


def relators() -> tuple[str, str]:
    """The two defining relators ``[y, xyx^-2]`` and ``[y, x^2yx^-3]``."""
    from .words import commutator

    return commutator("y", "xyXX"), commutator("y", "xxyXXX")


__all__ = [
    "NormalForm",
    "ExponentProfile",
    "Derivation",
    "Step",
    "IDENTITY",
    "ResourceLimitError",
    "PreconditionError",
    "profile",
    "is_normal_form",
    "sigma_normalize",
    "SigmaRewriter",
    "multiply_y",
    "multiply_blocks",
    "NeedMore",
    "multiply",
    "normalize_by_multiplication",
    "edge_in_tree",
    "nf",
    "relators",
    "invert",
    "free_reduce",
]
