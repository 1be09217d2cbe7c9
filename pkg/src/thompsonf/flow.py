"""The flow function on directed Cayley-graph edges and its iteration."""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from functools import lru_cache

from .normal_form import NeedMore, NormalForm, PreconditionError, edge_in_tree, multiply, multiply_blocks, profile
from .ordering import Edge, c_seq, weight, weight_bruteforce
from .words import format_word, invert, power

BOUND = 13
DEFAULT_MAX_ITER = int(os.environ.get("THOMPSONF_MAX_ITER", 10**4))

LONG_Y = "XYxyXXyxx"  # x^-1 y^-1 x y x^-2 y x^2
LONG_Y_INV = "XXYxxYXyx"  # x^-2 y^-1 x^2 y^-1 x^-1 y x


@dataclass(frozen=True)
class DirectedPath:
    start: NormalForm
    label: str

    def edges(self):
        v = self.start
        for a in self.label:
            yield Edge(v, a)
            v = multiply(v, a)

    @property
    def end(self) -> NormalForm:
        v = self.start
        for a in self.label:
            v = multiply(v, a)
        return v

    def in_tree(self) -> bool:
        return all(e.in_tree for e in self.edges())

    def __len__(self):
        return len(self.label)


def flow_label(i: int, eps: int, label: str) -> str:
    """Label of the flow path of a non-tree edge leaving ``... y^eps x^i``."""
    e = "y" if eps == 1 else "Y"
    inv_e = e.swapcase()
    if label == "y":
        if i > 2:
            return LONG_Y
        return power("x", -i) + inv_e + power("x", i) + "y" + power("x", -i - 1) + e + power("x", i + 1)
    if i > 3:
        return LONG_Y_INV
    return power("x", -i) + inv_e + power("x", i) + "Y" + power("x", -i + 1) + e + power("x", i - 1)


def phi_label(e: Edge) -> str:
    if e.in_tree:
        return e.label
    return flow_label(e.source.exps[0], e.source.signs[0], e.label)


def phi(e: Edge) -> DirectedPath:
    return DirectedPath(e.source, phi_label(e))


def phi_hat(p: DirectedPath) -> DirectedPath:
    return DirectedPath(p.start, "".join(phi_label(e) for e in p.edges()))


@dataclass
class FlowTrace:
    iterations: list[DirectedPath] = field(default_factory=list)
    terminated: bool = False

    @property
    def n_p(self) -> int:
        return len(self.iterations) - 1


def flow_to_tree(p: DirectedPath, max_iter: int = DEFAULT_MAX_ITER) -> FlowTrace:
    """Iterate the path extension of the flow until every edge lies in the tree."""
    trace = FlowTrace([p])
    for _ in range(max_iter + 1):
        labels, done = [], True
        for e in p.edges():
            if e.in_tree:
                labels.append(e.label)
            else:
                done = False
                labels.append(phi_label(e))
        if done:
            trace.terminated = True
            return trace
        if len(trace.iterations) > max_iter:
            break
        p = DirectedPath(p.start, "".join(labels))
        trace.iterations.append(p)
    return trace


@lru_cache(maxsize=None)
def _plan(i: int, eps: int, a: str) -> tuple:
    ops, shift = [], 0
    for c in flow_label(i, eps, a):
        if c in "xX":
            shift += 1 if c == "x" else -1
        else:
            ops.append((shift, c))
            shift = 0
    ops.append((shift, None))
    return tuple(ops)


def _flow_plan(i: int, eps: int, a: str) -> tuple:
    """A flow label as runs of x-letters (an exponent shift) between y-letters."""
    return _plan(min(i, 3 if a == "y" else 4), eps, a)


def _block_in_tree(exps: tuple, signs: tuple, a: str) -> bool:
    if a == "x" or a == "X" or not signs:
        return True
    return exps[0] < (1 if a == "y" else 2)


_HIDDEN = -1  # memo value: the depth depends on hidden blocks


class FlowDepth:
    """Memoised number of flow iterations needed to push a single edge into
    the tree.  A path needs the maximum of its edges' depths, since the path
    extension acts edge by edge.

    Depths are computed on truncated normal forms: only the lowest ``k``
    blocks are kept and the rest is hidden (see
    :func:`~thompsonf.normal_form.multiply_blocks`).  A depth obtained without
    ever touching hidden blocks is the depth of every edge sharing those low
    blocks, so memo entries are shared between many sources.  If the hidden
    part is needed, the computation restarts with more blocks.
    """

    def __init__(self, max_memo: int = 2 * 10**6, truncate: bool = True):
        self.memo: dict[tuple, int] = {}
        self.truncate = truncate
        self.max_memo = max_memo
        self.restarts = 0

    @staticmethod
    def _children(key: tuple) -> list[tuple]:
        exps, signs, more, a = key
        out = []
        for shift, b in _flow_plan(exps[0], signs[0], a):
            if shift:
                exps = (exps[0] + shift,) + exps[1:]
            if b is None:
                break
            if not _block_in_tree(exps, signs, b):
                out.append((exps, signs, more, b))
            exps, signs = multiply_blocks(exps, signs, b, more)
        return out

    def _solve(self, key: tuple) -> int:
        memo = self.memo
        stack = [(key, None)]
        cur = key
        try:
            while stack:
                cur, children = stack.pop()
                known = memo.get(cur)
                if known is not None:
                    if known < 0:
                        raise NeedMore
                    continue
                if children is None:
                    children = self._children(cur)
                    stack.append((cur, children))
                    stack.extend((c, None) for c in children if c not in memo)
                else:
                    memo[cur] = 1 + max((memo[c] for c in children), default=0)
        except NeedMore:
            # remember the failure for this key and everything waiting on it
            memo[cur] = _HIDDEN
            for k, children in stack:
                if children is not None:
                    memo[k] = _HIDDEN
            raise
        return memo[key]

    def depth(self, g: NormalForm, a: str) -> int:
        if edge_in_tree(g, a):
            return 0
        if len(self.memo) > self.max_memo:
            self.evict()
        k = 1 if self.truncate else g.n
        while True:
            if k >= g.n:
                return self._solve((g.exps, g.signs, False, a))
            try:
                return self._solve((g.exps[:k], g.signs[:k], True, a))
            except NeedMore:
                self.restarts += 1
                k += 1

    def evict(self) -> None:
        """Drop the entries for whole normal forms; truncated ones are shared
        widely and kept."""
        self.memo = {k: v for k, v in self.memo.items() if k[2]}
        if len(self.memo) > self.max_memo // 2:
            self.memo.clear()

    def __call__(self, e: Edge) -> int:
        return self.depth(e.source, e.label)

    def path_depth(self, p: DirectedPath) -> int:
        best, g = 0, p.start
        for a in p.label:
            best = max(best, self.depth(g, a))
            g = multiply(g, a)
        return best


# --- the termination claim ------------------------------------------------------


@dataclass
class ClaimReport:
    edge: Edge
    weight: int
    checked: list[tuple[Edge, bool, int | None]]
    violations: list[str]
    case: str

    @property
    def ok(self) -> bool:
        return not self.violations


def verify_claim_star(e: Edge) -> ClaimReport:
    """Every edge on phi(e) is in the tree or strictly lighter than e.

    Weights are recomputed from actual derivations rather than from exponent
    profiles.  For the long replacement paths the three y-edges on the path
    must moreover all be off the tree.
    """
    if e.in_tree:
        raise PreconditionError(f"edge {e} lies in the tree")
    w = weight_bruteforce(e)
    p = phi(e)
    checked, violations = [], []
    for e2 in p.edges():
        if e2.in_tree:
            checked.append((e2, True, None))
            continue
        w2 = weight_bruteforce(e2)
        checked.append((e2, False, w2))
        if not w2 < w:
            violations.append(f"{e2} has weight {w2} >= {w}")
    long_case = e.source.exps[0] > (2 if e.label == "y" else 3)
    if long_case:
        y_edges = [(e2, t) for e2, t, _ in checked if e2.label in "yY"]
        if len(y_edges) != 3:
            violations.append(f"expected three y-edges on phi({e}), got {len(y_edges)}")
        for e2, t in y_edges:
            if t:
                violations.append(f"{e2} lies in the tree")
    if p.end != e.target:
        violations.append(f"phi({e}) ends at {p.end}, not {e.target}")
    if len(p) > BOUND:
        violations.append(f"phi({e}) has length {len(p)} > {BOUND}")
    return ClaimReport(e, w, checked, violations, "II" if long_case else "I")


def table3_check(e: Edge) -> list[str]:
    """Compare actual cumulative exponents of f = g x^-1 y^-1 and h = f x with
    the closed-form columns, for a y-edge whose source ends in x^i, i >= 3."""
    g = e.source
    if e.label != "y" or e.in_tree or g.exps[0] < 3:
        raise PreconditionError("table check needs a non-tree y-edge with i_0 >= 3")
    problems = []
    s = profile(g).s
    n, m = g.n, profile(g).m
    m1 = next((k for k, v in enumerate(s) if v <= 2), n)
    gx = multiply(g, "X")
    if profile(gx).m_prime != m1:
        problems.append(f"m'(g x^-1) = {profile(gx).m_prime}, expected {m1}")
    f = multiply(gx, "Y")
    h = multiply(f, "x")
    cancel = m1 < n and s[m1] == 1 and g.signs[m1] == 1
    if cancel:
        sf = [v - 2 for v in s[:m1]] + [v - 1 for v in s[m1 + 1:]]
    else:
        sf = [v - 2 for v in s[:m1]] + [0] + [v - 1 for v in s[m1:]]
    sh = [v + 1 for v in sf]
    if list(profile(f).s) != sf:
        problems.append(f"s(f) = {profile(f).s}, expected {tuple(sf)}")
    if list(profile(h).s) != sh:
        problems.append(f"s(h) = {profile(h).s}, expected {tuple(sh)}")
    m_h = profile(h).m
    expected = m - 1 if cancel else m + 1
    if m_h != expected:
        problems.append(f"m(h) = {m_h}, expected {expected}")
    # e_1^{-1} leaves g x^-1 with label Y, e_2 leaves h, e_3 leaves g' x^-2
    e1_inv = Edge(gx, "Y")
    e2 = Edge(h, "y")
    e3 = Edge(multiply(multiply(e.target, "X"), "X"), "y")
    w = weight(e)
    for name, ed in (("e1^-1", e1_inv), ("e2", e2), ("e3", e3)):
        if ed.in_tree:
            problems.append(f"{name} = {ed} lies in the tree")
        elif not weight(ed) < w:
            problems.append(f"{name} = {ed} not lighter: {weight(ed)} >= {w}")
    return problems


def format_path(p: DirectedPath) -> str:
    return f"{format_word(p.start.word, '1')} . {format_word(p.label, '1')}"


def inverse_path(p: DirectedPath) -> DirectedPath:
    return DirectedPath(p.end, invert(p.label))


__all__ = [
    "BOUND",
    "DirectedPath",
    "FlowTrace",
    "FlowDepth",
    "ClaimReport",
    "phi",
    "phi_label",
    "flow_label",
    "phi_hat",
    "flow_to_tree",
    "verify_claim_star",
    "table3_check",
    "inverse_path",
    "c_seq",
]
