"""Finite-state acceptors: the normal-form language and the graph of the flow.

Automata are small immutable objects with integer states.  A :class:`DFA` may
be partial (a missing transition rejects); :class:`NFA` carries epsilon moves
and is only used as an intermediate for concatenation and star.  Words over
the padded triple alphabet are sequences of 3-character symbols such as
``"yx$"``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

from .words import LETTERS

PAD = "$"
PADDED_ALPHABET = tuple("".join(t) for t in itertools.product(LETTERS + PAD, repeat=3))


class AlphabetMismatch(ValueError):
    pass


@dataclass(frozen=True)
class DFA:
    alphabet: tuple[str, ...]
    trans: tuple[dict, ...]  # trans[q][symbol] -> state
    initial: int
    accepting: frozenset[int]

    @property
    def n_states(self) -> int:
        return len(self.trans)

    def step(self, q: int | None, sym: str) -> int | None:
        return None if q is None else self.trans[q].get(sym)

    def run(self, symbols: Iterable[str], q: int | None = None) -> int | None:
        q = self.initial if q is None else q
        for a in symbols:
            q = self.trans[q].get(a)
            if q is None:
                return None
        return q

    def accepts(self, symbols: Iterable[str]) -> bool:
        return self.run(symbols) in self.accepting

    def states_along(self, symbols: Sequence[str]) -> list[int | None]:
        """State after each prefix, including the empty one."""
        out, q = [self.initial], self.initial
        for a in symbols:
            q = None if q is None else self.trans[q].get(a)
            out.append(q)
        return out

    def complete(self) -> "DFA":
        if all(len(t) == len(self.alphabet) for t in self.trans):
            return self
        sink = len(self.trans)
        trans = [{a: t.get(a, sink) for a in self.alphabet} for t in self.trans]
        trans.append({a: sink for a in self.alphabet})
        return DFA(self.alphabet, tuple(trans), self.initial, self.accepting)

    def to_nfa(self) -> "NFA":
        return NFA(
            self.alphabet,
            tuple({a: frozenset([q]) for a, q in t.items()} for t in self.trans),
            tuple(frozenset() for _ in self.trans),
            frozenset([self.initial]),
            self.accepting,
        )

    def is_empty(self) -> bool:
        return not (_reachable(self) & self.accepting)

    def export(self) -> str:
        """Plain-text table: three header lines, then ``src<TAB>symbol<TAB>dst``."""
        lines = [
            "alphabet\t" + " ".join(self.alphabet),
            f"initial\t{self.initial}",
            "accepting\t" + " ".join(str(q) for q in sorted(self.accepting)),
        ]
        for q, t in enumerate(self.trans):
            for a in self.alphabet:
                if a in t:
                    lines.append(f"{q}\t{a}\t{t[a]}")
        return "\n".join(lines) + "\n"

    @classmethod
    def from_export(cls, text: str) -> "DFA":
        rows = text.splitlines()
        alphabet = tuple(rows[0].split("\t", 1)[1].split())
        initial = int(rows[1].split("\t")[1])
        acc_field = rows[2].split("\t", 1)[1] if "\t" in rows[2] else ""
        accepting = frozenset(int(q) for q in acc_field.split())
        edges = [r.split("\t") for r in rows[3:] if r]
        n = 1 + max([initial, *accepting, *(int(e[0]) for e in edges), *(int(e[2]) for e in edges)])
        trans = [dict() for _ in range(n)]
        for src, a, dst in edges:
            trans[int(src)][a] = int(dst)
        return cls(alphabet, tuple(trans), initial, accepting)


@dataclass(frozen=True)
class NFA:
    alphabet: tuple[str, ...]
    trans: tuple[dict, ...]  # trans[q][symbol] -> frozenset of states
    eps: tuple[frozenset, ...]
    initial: frozenset[int]
    accepting: frozenset[int]

    def closure(self, states: Iterable[int]) -> frozenset[int]:
        seen = set(states)
        todo = list(seen)
        while todo:
            q = todo.pop()
            for r in self.eps[q]:
                if r not in seen:
                    seen.add(r)
                    todo.append(r)
        return frozenset(seen)

    def determinize(self) -> DFA:
        """Subset construction over reachable subsets; the empty subset is
        left out, so the result may be partial."""
        start = self.closure(self.initial)
        index = {start: 0}
        trans: list[dict] = [{}]
        todo = [start]
        while todo:
            cur = todo.pop()
            row = trans[index[cur]]
            for a in self.alphabet:
                nxt = set()
                for q in cur:
                    nxt.update(self.trans[q].get(a, ()))
                if not nxt:
                    continue
                nxt = self.closure(nxt)
                if nxt not in index:
                    index[nxt] = len(trans)
                    trans.append({})
                    todo.append(nxt)
                row[a] = index[nxt]
        accepting = frozenset(i for s, i in index.items() if s & self.accepting)
        return DFA(self.alphabet, tuple(trans), 0, accepting)


# --- constructions --------------------------------------------------------------


def _check_alphabets(*autos):
    alphabets = {a.alphabet for a in autos}
    if len(alphabets) != 1:
        raise AlphabetMismatch("automata are over different alphabets")


def _reachable(d: DFA) -> set[int]:
    seen, todo = {d.initial}, [d.initial]
    while todo:
        q = todo.pop()
        for r in d.trans[q].values():
            if r not in seen:
                seen.add(r)
                todo.append(r)
    return seen


def minimize(d: DFA) -> DFA:
    """Minimal complete DFA for the same language (Moore partition refinement
    on the reachable part, states renumbered in breadth-first order)."""
    d = d.complete()
    reach = sorted(_reachable(d))
    block = {q: int(q in d.accepting) for q in reach}
    n_blocks = len(set(block.values()))
    while True:
        sig = {q: (block[q], tuple(block[d.trans[q][a]] for a in d.alphabet)) for q in reach}
        ids: dict = {}
        new = {q: ids.setdefault(sig[q], len(ids)) for q in reach}
        if len(ids) == n_blocks:
            break
        block, n_blocks = new, len(ids)
    # canonical numbering by BFS from the initial block
    rep = {}
    for q in reach:
        rep.setdefault(block[q], q)
    order = {block[d.initial]: 0}
    queue = [block[d.initial]]
    for b in queue:
        for a in d.alphabet:
            c = block[d.trans[rep[b]][a]]
            if c not in order:
                order[c] = len(order)
                queue.append(c)
    trans = [None] * len(order)
    for b, i in order.items():
        trans[i] = {a: order[block[d.trans[rep[b]][a]]] for a in d.alphabet}
    accepting = frozenset(order[block[q]] for q in reach if q in d.accepting)
    return DFA(d.alphabet, tuple(trans), 0, accepting)


def complement(d: DFA) -> DFA:
    c = d.complete()
    return DFA(c.alphabet, c.trans, c.initial, frozenset(range(c.n_states)) - c.accepting)


def _product(d1: DFA, d2: DFA, accept) -> DFA:
    _check_alphabets(d1, d2)
    d1, d2 = d1.complete(), d2.complete()
    start = (d1.initial, d2.initial)
    index = {start: 0}
    trans: list[dict] = [{}]
    todo = [start]
    while todo:
        p, q = cur = todo.pop()
        row = trans[index[cur]]
        for a in d1.alphabet:
            nxt = (d1.trans[p][a], d2.trans[q][a])
            if nxt not in index:
                index[nxt] = len(trans)
                trans.append({})
                todo.append(nxt)
            row[a] = index[nxt]
    accepting = frozenset(i for (p, q), i in index.items() if accept(p in d1.accepting, q in d2.accepting))
    return DFA(d1.alphabet, tuple(trans), 0, accepting)


def intersection(d1: DFA, d2: DFA) -> DFA:
    return _product(d1, d2, lambda a, b: a and b)


def union(d1: DFA, d2: DFA) -> DFA:
    return _product(d1, d2, lambda a, b: a or b)


def _disjoint(n1: NFA, n2: NFA):
    k = len(n1.trans)
    shift = lambda s: frozenset(q + k for q in s)  # noqa: E731
    trans = n1.trans + tuple({a: shift(s) for a, s in t.items()} for t in n2.trans)
    eps = n1.eps + tuple(shift(s) for s in n2.eps)
    return trans, list(eps), shift


def concatenation(d1: DFA, d2: DFA) -> DFA:
    _check_alphabets(d1, d2)
    n1, n2 = d1.to_nfa(), d2.to_nfa()
    trans, eps, shift = _disjoint(n1, n2)
    for q in n1.accepting:
        eps[q] = eps[q] | shift(n2.initial)
    return NFA(n1.alphabet, trans, tuple(eps), n1.initial, shift(n2.accepting)).determinize()


def star(d: DFA) -> DFA:
    n = d.to_nfa()
    new = len(n.trans)
    eps = list(n.eps) + [n.initial]
    for q in n.accepting:
        eps[q] = eps[q] | n.initial
    return NFA(n.alphabet, n.trans + ({},), tuple(eps), frozenset([new]), n.accepting | {new}).determinize()


def quotient(d: DFA, z: Sequence[str]) -> DFA:
    """Right quotient ``{w | wz in L}``: same machine, accepting the states
    from which ``z`` leads to acceptance."""
    accepting = frozenset(q for q in range(d.n_states) if d.run(z, q) in d.accepting)
    return DFA(d.alphabet, d.trans, d.initial, accepting)


def word_language(w: Sequence[str], alphabet: tuple[str, ...] = tuple(LETTERS)) -> DFA:
    trans = tuple({w[k]: k + 1} for k in range(len(w))) + ({},)
    return DFA(alphabet, trans, 0, frozenset([len(w)]))


def empty_language(alphabet: tuple[str, ...] = tuple(LETTERS)) -> DFA:
    return DFA(alphabet, ({},), 0, frozenset())


def all_words(alphabet: tuple[str, ...] = tuple(LETTERS)) -> DFA:
    return DFA(alphabet, ({a: 0 for a in alphabet},), 0, frozenset([0]))


def symbols(letters: str, alphabet: tuple[str, ...] = tuple(LETTERS)) -> DFA:
    """One-letter words drawn from ``letters``."""
    return DFA(alphabet, ({a: 1 for a in letters}, {}), 0, frozenset([1]))


def concat_all(*parts: DFA) -> DFA:
    out = parts[0]
    for p in parts[1:]:
        out = concatenation(out, p)
    return out


def union_all(*parts: DFA) -> DFA:
    out = parts[0]
    for p in parts[1:]:
        out = union(out, p)
    return out


def language_equal(d1: DFA, d2: DFA) -> bool:
    _check_alphabets(d1, d2)
    diff = union(intersection(d1, complement(d2)), intersection(d2, complement(d1)))
    return diff.is_empty()


# --- the normal-form language ---------------------------------------------------


def _x_plus() -> DFA:
    return concatenation(word_language("x"), star(word_language("x")))


@lru_cache(maxsize=None)
def forbidden_factors() -> DFA:
    """{a a^-1} u y^e x x* y u y^e x^2 x* y^-1."""
    cancel = union_all(*(word_language(a + a.swapcase()) for a in LETTERS))
    y_any = symbols("yY")
    rule_y = concat_all(y_any, _x_plus(), word_language("y"))
    rule_yinv = concat_all(y_any, word_language("x"), _x_plus(), word_language("Y"))
    return minimize(union_all(cancel, rule_y, rule_yinv))


@lru_cache(maxsize=None)
def nf_automaton() -> DFA:
    """Minimal DFA for the normal forms: no factor from :func:`forbidden_factors`."""
    anything = all_words()
    return minimize(complement(concat_all(anything, forbidden_factors(), anything)))


@lru_cache(maxsize=None)
def ends_with(suffix: str) -> DFA:
    """A* suffix."""
    return minimize(concatenation(all_words(), word_language(suffix)))


@lru_cache(maxsize=None)
def y_then_suffix(suffix: str) -> DFA:
    """A* y^{+-1} A* suffix."""
    anything = all_words()
    return minimize(concat_all(anything, symbols("yY"), anything, word_language(suffix)))


@lru_cache(maxsize=None)
def nf_with_suffix(suffix: str) -> DFA:
    return minimize(intersection(nf_automaton(), ends_with(suffix)))


@lru_cache(maxsize=None)
def nf_with_y_then_suffix(suffix: str) -> DFA:
    return minimize(intersection(nf_automaton(), y_then_suffix(suffix)))


# --- padded tuples --------------------------------------------------------------


def pad(*words: str) -> tuple[str, ...]:
    """Padded encoding of a tuple of words as a sequence of tuple symbols."""
    n = max((len(w) for w in words), default=0)
    cols = [w + PAD * (n - len(w)) for w in words]
    return tuple("".join(c[k] for c in cols) for k in range(n))


def unpad(symbols_: Sequence[str], arity: int = 3) -> tuple[str, ...] | None:
    """Inverse of :func:`pad`; None if some coordinate has a letter after ``$``
    or the word ends in an all-``$`` symbol."""
    cols = ["".join(s[j] for s in symbols_) for j in range(arity)]
    out = []
    for c in cols:
        w = c.rstrip(PAD)
        if PAD in w:
            return None
        out.append(w)
    if symbols_ and all(c == PAD for c in symbols_[-1]):
        return None
    return tuple(out)


def _as_dfa(x) -> DFA:
    if isinstance(x, DFA):
        return x
    return word_language(x)


def padded_product(*components) -> DFA:
    """Synchronous acceptor over tuple symbols for the product of the
    component languages (each a DFA over A or a single word)."""
    comps = [_as_dfa(c) for c in components]
    k = len(comps)
    alphabet = tuple("".join(t) for t in itertools.product(LETTERS + PAD, repeat=k))
    # a component state is an int while reading letters, ("done", q) once padding started
    start = tuple(c.initial for c in comps)
    index = {start: 0}
    trans: list[dict] = [{}]
    todo = [start]
    while todo:
        cur = todo.pop()
        row = trans[index[cur]]
        for sym in alphabet:
            if all(ch == PAD for ch in sym):
                continue
            nxt = []
            for c, q, ch in zip(comps, cur, sym):
                if ch == PAD:
                    base = q[1] if isinstance(q, tuple) else q
                    if base not in c.accepting:
                        break
                    nxt.append(("done", base))
                else:
                    if isinstance(q, tuple):
                        break
                    r = c.trans[q].get(ch)
                    if r is None:
                        break
                    nxt.append(r)
            else:
                nxt = tuple(nxt)
                if nxt not in index:
                    index[nxt] = len(trans)
                    trans.append({})
                    todo.append(nxt)
                row[sym] = index[nxt]
    accepting = frozenset(
        i
        for st, i in index.items()
        if all((q[1] if isinstance(q, tuple) else q) in c.accepting for c, q in zip(comps, st))
    )
    return DFA(alphabet, tuple(trans), 0, accepting)


def graph_phi_terms() -> list[tuple[DFA, str, str]]:
    """The pieces (left language, input letter, output label) whose padded
    products make up the graph of the flow function."""
    from .flow import LONG_Y, LONG_Y_INV
    from .words import power

    N = nf_automaton()
    terms = []
    for a in LETTERS:
        tree = union(quotient(N, a), nf_with_suffix(a.swapcase()))
        terms.append((minimize(tree), a, a))
    for eps in "yY":
        for i in (1, 2):
            out = power("x", -i) + eps.swapcase() + power("x", i) + "y" + power("x", -i - 1) + eps + power("x", i + 1)
            terms.append((nf_with_suffix(eps + "x" * i), "y", out))
        for i in (2, 3):
            out = power("x", -i) + eps.swapcase() + power("x", i) + "Y" + power("x", -i + 1) + eps + power("x", i - 1)
            terms.append((nf_with_suffix(eps + "x" * i), "Y", out))
    terms.append((nf_with_y_then_suffix("xxx"), "y", LONG_Y))
    terms.append((nf_with_y_then_suffix("xxxx"), "Y", LONG_Y_INV))
    return terms


@lru_cache(maxsize=None)
def graph_phi_automaton() -> DFA:
    """Minimal synchronous acceptor for the padded triples (gamma, a, label)."""
    parts = [padded_product(left, a, out) for left, a, out in graph_phi_terms()]
    acc = parts[0]
    for p in parts[1:]:
        acc = minimize(union(acc, p))
    return acc


def accepts_triple(d: DFA, gamma: str, a: str, label: str) -> bool:
    return d.accepts(pad(gamma, a, label))


__all__ = [
    "DFA",
    "NFA",
    "PAD",
    "PADDED_ALPHABET",
    "AlphabetMismatch",
    "minimize",
    "complement",
    "intersection",
    "union",
    "concatenation",
    "star",
    "quotient",
    "word_language",
    "empty_language",
    "all_words",
    "language_equal",
    "nf_automaton",
    "nf_with_suffix",
    "nf_with_y_then_suffix",
    "pad",
    "unpad",
    "padded_product",
    "graph_phi_terms",
    "graph_phi_automaton",
    "accepts_triple",
]
