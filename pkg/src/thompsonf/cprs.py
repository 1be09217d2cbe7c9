"""A bounded regular convergent prefix-rewriting system for F.

Rules have the shape ``u . lhs -> u . rhs`` where the prefix ``u`` must lie in
a regular guard language.  There are five families:

1. ``u a a^-1 -> u`` for every letter a (no guard);
2. ``u y^e x^i y -> u x^i y x^{-i-1} y^e x^{i+1}``, i in {1, 2}, guard ``u y^e x^i`` in N;
3. ``u y^e x^i y^-1 -> u x^i y^-1 x^{-i+1} y^e x^{i-1}``, i in {2, 3}, same style of guard;
4. ``u x y -> u y^-1 x y x^-2 y x^2``, guard ``u`` in N and ``u`` in A* y^{+-1} A* x^2;
5. ``u x^2 y^-1 -> u y^-1 x^2 y^-1 x^-1 y x``, same guard as family 4.

Guards are decided by running DFAs from :mod:`thompsonf.automata` along the
word.  The strategy is deterministic: the shortest rewritable prefix wins, and
among rules completing at the same place the lower family (then the listed
order inside a family) wins.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from functools import lru_cache

from . import automata
from .flow import BOUND, LONG_Y, LONG_Y_INV, phi_label
from .normal_form import NormalForm, PreconditionError, is_normal_form
from .ordering import Edge
from .words import LETTERS, format_word, power

DEFAULT_STEP_BUDGET = int(os.environ.get("THOMPSONF_MAX_STEPS", 10**5))
MAX_LHS, MAX_RHS = 5, 10


class StepBudgetExceeded(RuntimeError):
    pass


@dataclass(frozen=True)
class PrefixRule:
    rule_id: str
    family: int
    lhs: str
    rhs: str
    guard_name: str  # "any", "N/<word>" (u.word in N) or "N&y*xx"

    def __post_init__(self):
        if len(self.lhs) > MAX_LHS or len(self.rhs) > MAX_RHS:
            raise ValueError(f"rule {self.rule_id} breaks the length bounds")

    @property
    def guard(self) -> automata.DFA:
        return guard_automaton(self.guard_name)

    def describe(self) -> str:
        return f"{self.rule_id}: u.{format_word(self.lhs)} -> u.{format_word(self.rhs, '1')}  [u in {self.guard_name}]"


@lru_cache(maxsize=None)
def guard_automaton(name: str) -> automata.DFA:
    if name == "any":
        return automata.all_words()
    if name == "N&y*xx":
        return automata.nf_with_y_then_suffix("xx")
    if name.startswith("N/"):
        return automata.quotient(automata.nf_automaton(), name[2:])
    raise KeyError(name)


@lru_cache(maxsize=None)
def rules() -> tuple[PrefixRule, ...]:
    out = []
    for a in LETTERS:
        out.append(PrefixRule(f"1.{a}", 1, a + a.swapcase(), "", "any"))
    for eps in "yY":
        for i in (1, 2):
            lhs = eps + power("x", i) + "y"
            rhs = power("x", i) + "y" + power("x", -i - 1) + eps + power("x", i + 1)
            out.append(PrefixRule(f"2.{eps}{i}", 2, lhs, rhs, "N/" + eps + power("x", i)))
    for eps in "yY":
        for i in (2, 3):
            lhs = eps + power("x", i) + "Y"
            rhs = power("x", i) + "Y" + power("x", -i + 1) + eps + power("x", i - 1)
            out.append(PrefixRule(f"3.{eps}{i}", 3, lhs, rhs, "N/" + eps + power("x", i)))
    out.append(PrefixRule("4", 4, "xy", LONG_Y[1:], "N&y*xx"))
    out.append(PrefixRule("5", 5, "xxY", LONG_Y_INV[2:], "N&y*xx"))
    return tuple(out)


# --- rewriting ------------------------------------------------------------------


@dataclass(frozen=True)
class RewriteStep:
    rule: PrefixRule
    split: int  # length of the rewritten prefix u.lhs
    before: str
    after: str

    @property
    def prefix(self) -> str:
        return self.before[: self.split - len(self.rule.lhs)]

    def render(self) -> str:
        u = format_word(self.prefix, "1")
        return (
            f"{self.rule.rule_id:<5} @{self.split:<4d} u={u} in {self.rule.guard_name}: "
            f"{format_word(self.before, '1')} -> {format_word(self.after, '1')}"
        )


@lru_cache(maxsize=None)
def _guard_table():
    """One product DFA running every guard at once, and per rule the set of
    product states in which its guard holds."""
    names = sorted({r.guard_name for r in rules()})
    dfas = [guard_automaton(n).complete() for n in names]
    alphabet = dfas[0].alphabet
    start = tuple(d.initial for d in dfas)
    index, table, todo = {start: 0}, [None], [start]
    while todo:
        cur = todo.pop()
        row = {}
        for a in alphabet:
            nxt = tuple(d.trans[q][a] for d, q in zip(dfas, cur))
            if nxt not in index:
                index[nxt] = len(table)
                table.append(None)
                todo.append(nxt)
            row[a] = index[nxt]
        table[index[cur]] = row
    holds = {
        n: frozenset(i for st, i in index.items() if st[k] in dfas[k].accepting) for k, n in enumerate(names)
    }
    by_last = {
        a: tuple((r, list(r.lhs), len(r.lhs), holds[r.guard_name]) for r in rules() if r.lhs[-1] == a)
        for a in LETTERS
    }
    return table, by_last


class PrefixRewriter:
    """Resumable rewriting: the irreducible prefix read so far, the product
    state of all guard automata after each of its prefixes, and the steps
    taken.  After a rewrite at ``u.lhs`` no prefix of ``u`` can be rewritable
    (it was not before), so the right-hand side is simply fed back in after
    ``u`` with the guard states for ``u`` kept.  Feeding ``u`` then ``v`` is
    the same computation as rewriting ``uv`` from scratch.
    """

    __slots__ = ("table", "by_last", "word", "states", "steps", "trace", "max_lhs", "max_rhs", "budget", "log")

    def __init__(self, trace: bool = False, budget: int | None = None):
        self.table, self.by_last = _guard_table()
        self.word: list[str] = []
        self.states = [0]
        self.steps = 0
        self.max_lhs = self.max_rhs = 0
        self.trace = trace
        self.log: list[RewriteStep] = []
        self.budget = DEFAULT_STEP_BUDGET if budget is None else budget

    def copy(self) -> "PrefixRewriter":
        c = PrefixRewriter.__new__(PrefixRewriter)
        c.table, c.by_last = self.table, self.by_last
        c.word, c.states, c.log = list(self.word), list(self.states), list(self.log)
        c.steps, c.max_lhs, c.max_rhs = self.steps, self.max_lhs, self.max_rhs
        c.trace, c.budget = self.trace, self.budget
        return c

    def _match(self, p: int):
        """First rule whose lhs ends at position p and whose guard holds."""
        w, states = self.word, self.states
        for r, lhs, k, holds in self.by_last[w[p - 1]]:
            if p >= k and states[p - k] in holds and w[p - k:p] == lhs:
                return r
        return None

    def feed(self, w: str) -> "PrefixRewriter":
        pending = list(reversed(w))
        word, states, table = self.word, self.states, self.table
        while pending:
            a = pending.pop()
            word.append(a)
            states.append(table[states[-1]][a])
            p = len(word)
            r = self._match(p)
            if r is None:
                continue
            self.steps += 1
            if self.steps > self.budget:
                raise StepBudgetExceeded(f"no irreducible word within {self.budget} steps")
            k = p - len(r.lhs)
            self.max_lhs = max(self.max_lhs, p - k)
            self.max_rhs = max(self.max_rhs, len(r.rhs))
            if self.trace:
                before = "".join(word) + "".join(reversed(pending))
            del word[k:]
            del states[k + 1:]
            pending.extend(reversed(r.rhs))
            if self.trace:
                self.log.append(RewriteStep(r, p, before, "".join(word) + "".join(reversed(pending))))
        return self

    def result(self) -> "RewriteResult":
        return RewriteResult("".join(self.word), self.steps, list(self.log), self.max_lhs, self.max_rhs)


def rewrite_once(w: str):
    """One rewrite at the shortest rewritable prefix.

    Returns ``(new_word, rule_id, split)`` or None when ``w`` is irreducible.
    """
    table, by_last = _guard_table()
    q = 0
    states = [0]
    for p in range(1, len(w) + 1):
        q = table[q][w[p - 1]]
        states.append(q)
        for r, lhs, k, holds in by_last[w[p - 1]]:
            if p >= k and states[p - k] in holds and w[p - k:p] == r.lhs:
                return w[: p - k] + r.rhs + w[p:], r.rule_id, p
    return None


@dataclass
class RewriteResult:
    word: str
    steps: int
    trace: list[RewriteStep] = field(default_factory=list)
    max_lhs: int = 0  # longest replaced suffix over all steps
    max_rhs: int = 0

    def __iter__(self):
        return iter((self.word, self.steps))


def rewrite_to_irreducible(w: str, trace: bool = False, budget: int | None = None) -> RewriteResult:
    """Apply :func:`rewrite_once` until nothing matches."""
    return PrefixRewriter(trace, budget).feed(w).result()


def is_irreducible(w: str) -> bool:
    return rewrite_once(w) is None


# --- graph of the flow ----------------------------------------------------------


@dataclass(frozen=True)
class GraphPhiTriple:
    gamma: NormalForm
    a: str
    out_label: str

    def __post_init__(self):
        if len(self.out_label) > BOUND:
            raise ValueError("flow label longer than the bound")

    def words(self) -> tuple[str, str, str]:
        return self.gamma.word, self.a, self.out_label

    def padded(self) -> tuple[str, ...]:
        return automata.pad(*self.words())


def graph_phi(gamma: NormalForm, a) -> GraphPhiTriple:
    a = getattr(a, "letter", a)
    return GraphPhiTriple(gamma, a, phi_label(Edge(gamma, a)))


def in_graph_phi(gamma: str, a: str, label: str) -> bool:
    """Direct membership test, without automata."""
    if a not in LETTERS or len(a) != 1 or not is_normal_form(gamma):
        return False
    return phi_label(Edge(NormalForm.from_word(gamma), a)) == label


def check_bounds(step: RewriteStep) -> None:
    if len(step.rule.lhs) > MAX_LHS or len(step.rule.rhs) > MAX_RHS:
        raise PreconditionError(f"unbounded step {step.render()}")


__all__ = [
    "PrefixRule",
    "RewriteStep",
    "RewriteResult",
    "PrefixRewriter",
    "GraphPhiTriple",
    "StepBudgetExceeded",
    "rules",
    "guard_automaton",
    "rewrite_once",
    "rewrite_to_irreducible",
    "is_irreducible",
    "graph_phi",
    "in_graph_phi",
    "MAX_LHS",
    "MAX_RHS",
]
