"""Exhaustive property sweeps over small words, edges and paths.

Each sweep returns a :class:`SweepResult`; the CLI ``verify`` verb and the
acceptance tests both run these.  Sweeps that enumerate every word of a given
length walk the tree of prefixes depth first and carry the state of each
left-to-right algorithm along, so a word costs one extra letter of work over
its parent.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Callable, Iterator

from . import automata, cprs, diagrams, oracle
from .flow import BOUND, DEFAULT_MAX_ITER, DirectedPath, FlowDepth, flow_to_tree, phi, phi_label, table3_check, verify_claim_star
from .normal_form import IDENTITY, NormalForm, SigmaRewriter, edge_in_tree, is_normal_form, multiply, relators
from .ordering import Edge, in_tree, size_sequence, size_sequence_bruteforce, weight
from .words import LETTERS, invert

MAX_REPORTED = 20


@dataclass
class SweepResult:
    name: str
    checked: int = 0
    failures: list[str] = field(default_factory=list)
    n_failures: int = 0
    info: dict = field(default_factory=dict)

    def fail(self, msg: str):
        self.n_failures += 1
        if len(self.failures) < MAX_REPORTED:
            self.failures.append(msg)

    @property
    def ok(self) -> bool:
        return self.n_failures == 0 and self.checked > 0

    def summary(self) -> str:
        extra = " ".join(f"{k}={v}" for k, v in self.info.items())
        return f"{self.name:<18} checked={self.checked} failures={self.n_failures} {extra}".rstrip()

    def line(self) -> str:
        return f"{'PASS' if self.ok else 'FAIL'}  {self.summary()}"


# --- enumeration helpers --------------------------------------------------------


def normal_form_words(max_len: int) -> Iterator[str]:
    """Every normal form of length <= max_len (N is prefix closed)."""
    stack = [""]
    while stack:
        w = stack.pop()
        yield w
        if len(w) < max_len:
            for a in LETTERS:
                if is_normal_form(w + a):
                    stack.append(w + a)


def normal_forms(max_len: int) -> Iterator[NormalForm]:
    for w in normal_form_words(max_len):
        yield NormalForm.from_word(w)


def non_tree_edges(max_len: int, labels: str = "yY") -> Iterator[Edge]:
    for g in normal_forms(max_len):
        for a in labels:
            if not edge_in_tree(g, a):
                yield Edge(g, a)


# --- criteria -------------------------------------------------------------------


def oracle_sweep(max_len: int = 10) -> SweepResult:
    """PL-map value of every freely reduced word equals that of its normal form.

    A word that is not freely reduced has the same image as its free
    reduction (the maps of a and a^-1 are inverse), so reduced words cover
    every element reachable by words of the given length.
    """
    res = SweepResult("oracle")
    for r in relators():
        res.checked += 1
        if oracle.evaluate(r) != oracle.IDENTITY_MAP:
            res.fail(f"relator {r} is not the identity map")
    stack = [("", SigmaRewriter(record=False, keep=False))]
    while stack:
        w, s = stack.pop()
        res.checked += 1
        if oracle.evaluate(w) != oracle.evaluate(s.word):
            res.fail(f"{w}: oracle differs from normal form {s.word}")
        if len(w) < max_len:
            for a in LETTERS:
                if w and w[-1] == a.swapcase():
                    continue
                stack.append((w + a, s.copy().feed(a)))
    return res


def normalize_sweep(max_len: int = 10) -> SweepResult:
    """Standard derivation, closed-form multiplication and the prefix-rewriting
    system agree on every word; rewrite steps respect the length bounds."""
    res = SweepResult("normalize")
    max_lhs = max_rhs = max_steps = 0
    stack = [("", SigmaRewriter(record=False, keep=False), cprs.PrefixRewriter(), IDENTITY)]
    while stack:
        w, s, p, g = stack.pop()
        res.checked += 1
        pw = "".join(p.word)
        if s.word != g.word or pw != g.word:
            res.fail(f"{w}: sigma={s.word} multiply={g.word} cprs={pw}")
        max_lhs, max_rhs, max_steps = max(max_lhs, p.max_lhs), max(max_rhs, p.max_rhs), max(max_steps, p.steps)
        if len(w) < max_len:
            for a in LETTERS:
                stack.append((w + a, s.copy().feed(a), p.copy().feed(a), multiply(g, a)))
    if max_lhs > cprs.MAX_LHS or max_rhs > cprs.MAX_RHS:
        res.fail(f"rewrite step replaced {max_lhs} letters by {max_rhs}")
    res.info.update(max_lhs=max_lhs, max_rhs=max_rhs, max_steps=max_steps)
    return res


def flow_bound_sweep(max_len: int = 10) -> SweepResult:
    """Every flow label has length <= 13, ends where the edge ends, and the
    inverse edge flows along the inverse path."""
    res = SweepResult("flow-bound")
    longest = 0
    for g in normal_forms(max_len):
        for a in LETTERS:
            e = Edge(g, a)
            p = phi(e)
            res.checked += 1
            longest = max(longest, len(p))
            if len(p) > BOUND:
                res.fail(f"{e}: label of length {len(p)}")
            if p.end != e.target:
                res.fail(f"{e}: flow path ends at {p.end}")
            if e.in_tree != in_tree(g, a):
                res.fail(f"{e}: tree criteria disagree")
            if phi_label(e.inverse) != invert(p.label):
                res.fail(f"{e}: flow of the inverse edge is not the inverse path")
    res.info["longest"] = longest
    return res


def inverse_edge_sweep(max_len: int = 10) -> SweepResult:
    """Size sequence and weight are shared by a non-tree edge and its inverse."""
    res = SweepResult("inverse-edge")
    for e in non_tree_edges(max_len):
        res.checked += 1
        inv = e.inverse
        if inv.in_tree:
            res.fail(f"{e}: inverse edge lies in the tree")
            continue
        s = size_sequence(e)
        if s != size_sequence(inv) or weight(e) != weight(inv):
            res.fail(f"{e}: sizes {s} vs {size_sequence(inv)}")
        if s != size_sequence_bruteforce(e):
            res.fail(f"{e}: profile sizes {s} vs derivation {size_sequence_bruteforce(e)}")
    return res


def claim_star_sweep(max_len: int = 10) -> SweepResult:
    res = SweepResult("claim-star")
    cases = {"I": 0, "II": 0}
    tables = 0
    for e in non_tree_edges(max_len):
        rep = verify_claim_star(e)
        res.checked += 1
        cases[rep.case] += 1
        for v in rep.violations:
            res.fail(f"{e}: {v}")
        if e.label == "y" and e.source.exps[0] >= 3:
            tables += 1
            for v in table3_check(e):
                res.fail(f"{e}: {v}")
    res.info.update(case_I=cases["I"], case_II=cases["II"], table_rows=tables)
    return res


def reachable_elements(start_len: int, radius: int) -> set[tuple]:
    """Elements ``s u`` with ``|nf(s)| <= start_len`` and ``|u| <= radius``,
    as ``(exps, signs)`` pairs."""
    seen = {(g.exps, g.signs) for g in normal_forms(start_len)}
    frontier = list(seen)
    for _ in range(radius):
        nxt = []
        for key in frontier:
            g = NormalForm._trusted(*key)
            for a in LETTERS:
                h = multiply(g, a)
                k = (h.exps, h.signs)
                if k not in seen:
                    seen.add(k)
                    nxt.append(k)
        frontier = nxt
    return seen


def _top_down(key: tuple) -> tuple:
    exps, signs = key
    return tuple(zip(signs[::-1], exps[:0:-1])), exps[0]


def flow_termination_sweep(start_len: int = 6, path_len: int = 8, max_iter: int = DEFAULT_MAX_ITER) -> SweepResult:
    """Every path of length <= path_len from a normal form of length <=
    start_len reaches the tree within max_iter flow iterations.

    The flow acts on a path edge by edge, so a path needs exactly the maximum
    number of iterations over its edges.  Every edge of such a path leaves an
    element ``s u`` with ``|u| <= path_len - 1``, and every such edge lies on
    one of the paths, so it suffices to bound the depth of all those edges.
    """
    res = SweepResult("flow-termination")
    fd = FlowDepth()
    deepest = 0
    elements = reachable_elements(start_len, max(path_len - 1, 0)) if path_len else set()
    # neighbours share their high blocks; visiting them together keeps the memo useful
    for key in sorted(elements, key=_top_down):
        g = NormalForm._trusted(*key)
        for a in "yY":
            d = fd.depth(g, a)
            res.checked += 1
            deepest = max(deepest, d)
            if d > max_iter:
                res.fail(f"({g}, {a}) needs {d} iterations")
    # the per-edge shortcut against the literal iteration on a sample of paths
    rng = random.Random(0)
    for g in sorted(normal_forms(min(start_len, 4)), key=lambda h: h.word)[:200]:
        label = "".join(rng.choice(LETTERS) for _ in range(path_len))
        p = DirectedPath(g, label)
        tr = flow_to_tree(p, max_iter)
        if not tr.terminated or tr.n_p != fd.path_depth(p):
            res.fail(f"{label} from {g}: iteration gives {tr.n_p}, edge depths give {fd.path_depth(p)}")
    res.info.update(elements=len(elements), max_n_p=deepest, memo=len(fd.memo))
    return res


def nf_automaton_sweep(max_len: int = 12) -> SweepResult:
    """The normal-form DFA agrees with the membership predicate on all words.

    Words are enumerated by extending only prefixes that lie in N; each word
    tried either lies in N or has all proper prefixes in N.  Any other word has
    a proper prefix outside N, which both sides reject for good: the DFA's
    only rejecting state is an absorbing sink (checked here) and a word with a
    forbidden factor keeps it under extension.
    """
    res = SweepResult("nf-automaton")
    d = automata.nf_automaton()
    rejecting = set(range(d.n_states)) - d.accepting
    for q in rejecting:
        if any(r != q for r in d.trans[q].values()) or len(d.trans[q]) != len(d.alphabet):
            res.fail(f"rejecting state {q} is not an absorbing sink")
    stack = [("", d.initial)]
    while stack:
        w, q = stack.pop()
        res.checked += 1
        acc = q in d.accepting
        if acc != is_normal_form(w):
            res.fail(f"{w}: automaton says {acc}")
        if acc and len(w) < max_len:
            for a in LETTERS:
                stack.append((w + a, d.trans[q][a]))
    res.info.update(states=d.n_states)
    return res


def _perturb(rng: random.Random, triple: tuple[str, str, str]) -> tuple[str, str, str]:
    parts = list(triple)
    j = rng.randrange(3)
    w = parts[j]
    op = rng.choice(("replace", "insert", "delete") if j != 1 else ("replace",))
    if op == "replace" and w:
        k = rng.randrange(len(w))
        w = w[:k] + rng.choice([c for c in LETTERS if c != w[k]]) + w[k + 1:]
    elif op == "insert" or not w:
        k = rng.randrange(len(w) + 1)
        w = w[:k] + rng.choice(LETTERS) + w[k:]
    else:
        k = rng.randrange(len(w))
        w = w[:k] + w[k + 1:]
    parts[j] = w
    return tuple(parts)


def graph_phi_sweep(max_len: int = 8, negatives: int = 1000, seed: int = 0) -> SweepResult:
    """The synchronous acceptor for the graph of the flow accepts every
    (gamma, a, label) with |gamma| <= max_len and rejects perturbed triples."""
    res = SweepResult("graph-phi")
    d = automata.graph_phi_automaton()
    positives = []
    for g in normal_forms(max_len):
        for a in LETTERS:
            t = cprs.graph_phi(g, a)
            res.checked += 1
            triple = t.words()
            positives.append(triple)
            if t.out_label != phi_label(Edge(g, a)):
                res.fail(f"{triple}: graph_phi disagrees with the flow")
            if not d.accepts(t.padded()):
                res.fail(f"{triple}: rejected by the automaton")
    rng = random.Random(seed)
    found = 0
    while found < negatives:
        cand = _perturb(rng, rng.choice(positives))
        if cprs.in_graph_phi(*cand):
            continue
        found += 1
        res.checked += 1
        if d.accepts(automata.pad(*cand)):
            res.fail(f"{cand}: accepted but not in the graph")
    res.info.update(states=d.n_states, positives=len(positives), negatives=found)
    return res


def cell_count_sweep(max_len: int = 8) -> SweepResult:
    """Filled box diagrams are valid and have exactly W(e) cells."""
    res = SweepResult("cell-count")
    for e in non_tree_edges(max_len, "y"):
        res.checked += 1
        dg = diagrams.box_diagram(e)
        cx = diagrams.fill(dg)
        if len(cx.cells) != weight(e):
            res.fail(f"{e}: {len(cx.cells)} cells, weight {weight(e)}")
        for p in cx.problems():
            res.fail(f"{e}: {p}")
        if cx.read(cx.outer) != dg.boundary_word:
            res.fail(f"{e}: boundary reads {cx.read(cx.outer)}")
    return res


def solve_sweep(max_len: int = 6, pairs: int = 3000, seed: int = 0) -> SweepResult:
    """Word problem by irreducible words against the oracle, on random pairs."""
    from .words import words_up_to

    res = SweepResult("solve")
    pool = list(words_up_to(max_len))
    rng = random.Random(seed)
    for _ in range(pairs):
        u, v = rng.choice(pool), rng.choice(pool)
        if rng.random() < 0.3:
            v = cprs.rewrite_to_irreducible(u).word  # make sure equal pairs occur
        res.checked += 1
        same = cprs.rewrite_to_irreducible(u).word == cprs.rewrite_to_irreducible(v).word
        if same != oracle.same_element(u, v):
            res.fail(f"{u} vs {v}")
    return res


SUITES: dict[str, tuple[Callable[..., SweepResult], str]] = {
    "oracle": (oracle_sweep, "max_len"),
    "normalize": (normalize_sweep, "max_len"),
    "flow-bound": (flow_bound_sweep, "max_len"),
    "inverse-edge": (inverse_edge_sweep, "max_len"),
    "claim-star": (claim_star_sweep, "max_len"),
    "flow-termination": (flow_termination_sweep, "path_len"),
    "nf-automaton": (nf_automaton_sweep, "max_len"),
    "graph-phi": (graph_phi_sweep, "max_len"),
    "cell-count": (cell_count_sweep, "max_len"),
    "solve": (solve_sweep, "max_len"),
}


def run_suite(name: str, max_len: int | None = None) -> SweepResult:
    fn, param = SUITES[name]
    return fn() if max_len is None else fn(**{param: max_len})


__all__ = ["SweepResult", "SUITES", "run_suite", "normal_forms", "normal_form_words", "non_tree_edges", "invert"]
