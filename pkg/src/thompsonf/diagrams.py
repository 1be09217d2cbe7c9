"""Filled box van Kampen diagrams for non-tree edges.

The diagram for an edge ``e = (gamma, y)`` is grown along the standard
rewriting of ``gamma y`` to its normal form ``gamma'``.  A *frontier* path,
always spelling the current word, starts as a fresh path labelled
``gamma y``.  Each y-rule replaces a subword of the frontier; the old and new
subwords bound a box labelled by a relator ``[y, x^k y x^-k-1]``, and a copy
of that box is glued in.  Each free reduction folds two adjacent frontier
edges together.  When the rewriting stops, the outer boundary reads
``gamma y gamma'^-1`` and the shared prefix of ``gamma y`` and ``gamma'``
remains as a one-dimensional tail.

Boxes of size 1 and 2 are single cells of the finite presentation.  A box of
size ``i >= 3`` is itself filled by the same swap mechanism, walking from
``y w_i`` to ``w_i y`` (``w_i = x^i y x^-i-1``) through five swaps that use
boxes of sizes ``i-2, i-1, 1, 1, i-2``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

from .normal_form import NormalForm, PreconditionError, sigma_normalize
from .ordering import Edge, c_seq
from .words import format_word, free_reduce, invert, power

Step = tuple[int, int]  # (edge id, +1 forward / -1 backward)


class DiagramError(AssertionError):
    pass


def box_word(k: int) -> str:
    """Boundary of a size-k box read from its bottom-left corner: ``y w_k y^-1 w_k^-1``."""
    w = power("x", k) + "y" + power("x", -k - 1)
    return "y" + w + "Y" + invert(w)


def _rotations(w: str):
    for r in range(len(w)):
        yield r, w[r:] + w[:r]


def box_size_of_cycle(c: str) -> tuple[int, bool, int] | None:
    """If the cyclic word ``c`` is a rotation of a box boundary or its inverse,
    return ``(k, inverted, rotation)``."""
    if (len(c) - 6) % 4 or len(c) < 10:
        return None
    k = (len(c) - 6) // 4
    for inverted, b in ((False, box_word(k)), (True, invert(box_word(k)))):
        for r, rot in _rotations(b):
            if rot == c:
                return k, inverted, r
    return None


# --- complexes ------------------------------------------------------------------


@dataclass(frozen=True)
class CellComplex:
    """Finalised 2-complex: edge ``j`` runs from ``edges[j][0]`` to
    ``edges[j][1]`` with positive letter ``edges[j][2]``; each cell and the
    outer boundary are closed walks of ``(edge, dir)`` steps."""

    n_vertices: int
    edges: tuple[tuple[int, int, str], ...]
    cells: tuple[tuple[Step, ...], ...]
    outer: tuple[Step, ...]
    basepoint: int

    def read(self, steps) -> str:
        return "".join(self.edges[e][2] if d > 0 else self.edges[e][2].upper() for e, d in steps)

    def tail(self, s: Step) -> int:
        e, d = s
        return self.edges[e][0] if d > 0 else self.edges[e][1]

    def head(self, s: Step) -> int:
        e, d = s
        return self.edges[e][1] if d > 0 else self.edges[e][0]

    @property
    def euler_characteristic(self) -> int:
        return self.n_vertices - len(self.edges) + len(self.cells)

    def cell_words(self) -> list[str]:
        return [self.read(c) for c in self.cells]

    def problems(self, max_box: int | None = 2) -> list[str]:
        """Validity checks; empty list when the complex is a disk diagram whose
        cells are boxes of size at most ``max_box`` (None: any size)."""
        out = []
        for name, walk in [("outer", self.outer)] + [(f"cell {j}", c) for j, c in enumerate(self.cells)]:
            for a, b in zip(walk, walk[1:] + walk[:1]):
                if self.head(a) != self.tail(b):
                    out.append(f"{name} is not a closed walk")
                    break
        for j, c in enumerate(self.cells):
            hit = box_size_of_cycle(self.read(c))
            if hit is None or (max_box is not None and hit[0] > max_box):
                out.append(f"cell {j} reads {self.read(c)}, not an allowed relator")
        sides = [0] * len(self.edges)
        for walk in (self.outer, *self.cells):
            for e, _ in walk:
                sides[e] += 1
        bad = [j for j, n in enumerate(sides) if n != 2]
        if bad:
            out.append(f"{len(bad)} edges do not have exactly two sides")
        if self.euler_characteristic != 1:
            out.append(f"Euler characteristic {self.euler_characteristic} != 1")
        if self.outer and self.tail(self.outer[0]) != self.basepoint:
            out.append("outer walk does not start at the basepoint")
        return out

    def to_dot(self, name: str = "diagram") -> str:
        lines = [f"digraph {name} {{", "  node [shape=point];", f'  v{self.basepoint} [shape=circle, label="*"];']
        for j, (t, h, a) in enumerate(self.edges):
            colour = "blue" if a == "x" else "red"
            lines.append(f'  v{t} -> v{h} [label="{a}", color={colour}];')
        lines.append("}")
        return "\n".join(lines) + "\n"

    def stats(self) -> dict:
        return {
            "vertices": self.n_vertices,
            "edges": len(self.edges),
            "cells": len(self.cells),
            "boundary_length": len(self.outer),
        }


@dataclass(frozen=True)
class _Template:
    """A finished box complex with its boundary walk, ready to be copied."""

    complex: CellComplex
    boundary: tuple[Step, ...]


class _Builder:
    def __init__(self):
        self.vparent: list[int] = []
        self.etail: list[int] = []
        self.ehead: list[int] = []
        self.eletter: list[str] = []
        self.eparent: list[int] = []
        self.erel: list[int] = []
        self.cells: list[list[Step]] = []

    # union-find on vertices
    def new_vertex(self) -> int:
        self.vparent.append(len(self.vparent))
        return len(self.vparent) - 1

    def vfind(self, v: int) -> int:
        root = v
        while self.vparent[root] != root:
            root = self.vparent[root]
        while self.vparent[v] != root:
            self.vparent[v], v = root, self.vparent[v]
        return root

    def vunion(self, a: int, b: int):
        a, b = self.vfind(a), self.vfind(b)
        if a != b:
            self.vparent[a] = b

    # union-find on edges, with orientation parity
    def new_edge(self, t: int, h: int, letter: str) -> int:
        self.etail.append(t)
        self.ehead.append(h)
        self.eletter.append(letter)
        self.eparent.append(len(self.eparent))
        self.erel.append(1)
        return len(self.eparent) - 1

    def efind(self, e: int) -> tuple[int, int]:
        sign = 1
        path = []
        while self.eparent[e] != e:
            path.append(e)
            sign *= self.erel[e]
            e = self.eparent[e]
        # compress
        s = sign
        for p in path:
            r = self.erel[p]
            self.eparent[p], self.erel[p] = e, s
            s *= r
        return e, sign

    def tail(self, s: Step) -> int:
        e, d = s
        return self.etail[e] if d > 0 else self.ehead[e]

    def head(self, s: Step) -> int:
        e, d = s
        return self.ehead[e] if d > 0 else self.etail[e]

    def letter(self, s: Step) -> str:
        e, d = s
        return self.eletter[e] if d > 0 else self.eletter[e].upper()

    def read(self, steps) -> str:
        return "".join(self.letter(s) for s in steps)

    def identify(self, a: Step, b: Step):
        """Glue the traversal ``a`` onto the traversal ``b``."""
        if self.letter(a) != self.letter(b):
            raise DiagramError("gluing edges with different labels")
        self.vunion(self.tail(a), self.tail(b))
        self.vunion(self.head(a), self.head(b))
        ra, sa = self.efind(a[0])
        rb, sb = self.efind(b[0])
        da, db = sa * a[1], sb * b[1]
        if ra == rb:
            if da != db:
                raise DiagramError("edge glued to its own reverse")
            return
        self.eparent[ra] = rb
        self.erel[ra] = da * db

    def path(self, start: int, word: str) -> tuple[list[Step], int]:
        steps, v = [], start
        for c in word:
            w = self.new_vertex()
            if c.islower():
                steps.append((self.new_edge(v, w, c), 1))
            else:
                steps.append((self.new_edge(w, v, c.lower()), -1))
            v = w
        return steps, v

    def instantiate(self, t: _Template) -> list[Step]:
        """Fresh copy of a template; returns its boundary walk in this builder."""
        cx = t.complex
        vmap = [self.new_vertex() for _ in range(cx.n_vertices)]
        emap = [self.new_edge(vmap[a], vmap[b], c) for a, b, c in cx.edges]
        for cell in cx.cells:
            self.cells.append([(emap[e], d) for e, d in cell])
        return [(emap[e], d) for e, d in t.boundary]

    # the two frontier moves

    def fold(self, frontier: list[Step], pos: int):
        a, b = frontier[pos], frontier[pos + 1]
        if self.letter(b) != self.letter(a).swapcase():
            raise DiagramError("folding letters that are not inverse")
        self.identify(b, (a[0], -a[1]))
        del frontier[pos:pos + 2]

    def swap(self, frontier: list[Step], pos: int, old_len: int, new: str, template) -> int:
        old = self.read(frontier[pos:pos + old_len])
        a = 0
        while a < min(len(old), len(new)) and old[a] == new[a]:
            a += 1
        b = 0
        while b < min(len(old), len(new)) - a and old[-1 - b] == new[-1 - b]:
            b += 1
        old_mid = frontier[pos + a:pos + old_len - b]
        new_mid = new[a:len(new) - b]
        cycle = self.read(old_mid) + invert(new_mid)
        hit = box_size_of_cycle(cycle)
        if hit is None:
            raise DiagramError(f"{old} -> {new} is not a box move")
        k, inverted, r = hit
        bnd = self.instantiate(template(k))
        if inverted:
            bnd = [(e, -d) for e, d in reversed(bnd)]
        bnd = bnd[r:] + bnd[:r]
        for s, f in zip(bnd, old_mid):
            self.identify(s, f)
        rest = bnd[len(old_mid):]
        frontier[pos + a:pos + old_len - b] = [(e, -d) for e, d in reversed(rest)]
        return k

    def finish(self, basepoint: int, outer: list[Step]) -> CellComplex:
        vroots = sorted({self.vfind(v) for v in range(len(self.vparent))})
        vid = {v: j for j, v in enumerate(vroots)}
        eroots = sorted({self.efind(e)[0] for e in range(len(self.eparent))})
        eid = {e: j for j, e in enumerate(eroots)}
        edges = tuple((vid[self.vfind(self.etail[e])], vid[self.vfind(self.ehead[e])], self.eletter[e]) for e in eroots)

        def norm(s: Step) -> Step:
            r, sign = self.efind(s[0])
            return eid[r], sign * s[1]

        cells = tuple(tuple(norm(s) for s in c) for c in self.cells)
        return CellComplex(len(vroots), edges, cells, tuple(norm(s) for s in outer), vid[self.vfind(basepoint)])


# --- boxes ----------------------------------------------------------------------


@dataclass(frozen=True)
class FilledBox:
    """How a size-i box is filled: a single cell for i <= 2, otherwise the
    five sub-boxes glued in order."""

    size: int
    children: tuple["FilledBox", ...] = ()

    @property
    def cell_count(self) -> int:
        return 1 if not self.children else sum(c.cell_count for c in self.children)

    def check_structure(self):
        if self.size <= 2:
            if self.children:
                raise DiagramError("small boxes are single cells")
            return
        sizes = sorted(c.size for c in self.children)
        if sizes != sorted([1, 1, self.size - 2, self.size - 2, self.size - 1]):
            raise DiagramError(f"box {self.size} has children {sizes}")
        for c in self.children:
            c.check_structure()


def _fill_chain(i: int) -> list[str]:
    """Frontier words from ``y w_i`` to ``w_i y``; consecutive words differ by one box."""
    X = lambda k: power("x", k)  # noqa: E731
    return [
        "y" + X(i) + "y" + X(-i - 1),
        "y" + X(2) + "Y" + X(i - 2) + "y" + X(1 - i) + "y" + X(-2),
        "y" + X(2) + "YXY" + X(i - 1) + "y" + X(-i) + "yxy" + X(-2),
        "y" + X(2) + "YXY" + X(i - 1) + "y" + X(1 - i) + "y" + X(-2) + "y",
        X(2) + "Y" + X(i - 2) + "y" + X(1 - i) + "y" + X(-2) + "y",
        X(i) + "y" + X(-i - 1) + "y",
    ]


@lru_cache(maxsize=None)
def _single_cell(k: int) -> _Template:
    bld = _Builder()
    start = bld.new_vertex()
    steps, end = bld.path(start, box_word(k))
    bld.vunion(end, start)
    bld.cells.append(list(steps))
    cx = bld.finish(start, steps)
    return _Template(cx, cx.outer)


@lru_cache(maxsize=None)
def _filled(k: int) -> tuple[_Template, FilledBox]:
    if k <= 2:
        return _single_cell(k), FilledBox(k)
    chain = _fill_chain(k)
    bld = _Builder()
    start = bld.new_vertex()
    initial, _ = bld.path(start, chain[0])
    frontier = list(initial)
    children = []
    for old, new in zip(chain, chain[1:]):
        if bld.read(frontier) != old:
            raise DiagramError("frontier drifted from the fill chain")
        size = bld.swap(frontier, 0, len(old), new, lambda j: _filled(j)[0])
        children.append(_filled(size)[1])
    outer = initial + [(e, -d) for e, d in reversed(frontier)]
    cx = bld.finish(start, outer)
    return _Template(cx, cx.outer), FilledBox(k, tuple(children))


def box_complex(k: int) -> CellComplex:
    """Filled diagram for the relator ``[y, x^k y x^-k-1]`` over the two-relator presentation."""
    if k < 1:
        raise ValueError("box sizes start at 1")
    return _filled(k)[0].complex


def filled_box(k: int) -> FilledBox:
    return _filled(k)[1]


# --- diagrams for edges ---------------------------------------------------------


@dataclass(frozen=True)
class Box:
    size: int
    crossing_sign: int  # sign of the y-letter running along top and bottom


@dataclass
class BoxDiagram:
    edge: Edge
    prefix_path: str
    boxes: tuple[Box, ...]
    derivation: list = field(repr=False, default_factory=list)

    @property
    def sizes(self) -> tuple[int, ...]:
        return tuple(b.size for b in self.boxes)

    @property
    def boundary_word(self) -> str:
        return self.edge.source.word + self.edge.label + invert(self.edge.target.word)

    def side_label(self, k: int) -> str:
        s = self.boxes[k].size
        return power("x", s) + "y" + power("x", -s - 1)


def box_diagram(e: Edge) -> BoxDiagram:
    """Boxes met while rewriting ``gamma . label`` to normal form."""
    if e.in_tree:
        raise PreconditionError(f"edge {e} lies in the tree")
    _, deriv = sigma_normalize(e.source.word + e.label)
    boxes = []
    for st in deriv.steps:
        if st.rule in ("y", "Y"):
            sign = 1 if st.before[st.position] == "y" else -1
            boxes.append(Box(st.size, sign))
    a, b = e.source.word + e.label, e.target.word
    k = 0
    while k < min(len(a), len(b)) and a[k] == b[k]:
        k += 1
    return BoxDiagram(e, a[:k], tuple(boxes), deriv.steps)


def _build(d: BoxDiagram, filled: bool) -> CellComplex:
    bld = _Builder()
    start = bld.new_vertex()
    word = d.edge.source.word + d.edge.label
    initial, _ = bld.path(start, word)
    frontier = list(initial)
    template = (lambda j: _filled(j)[0]) if filled else _single_cell
    for st in d.derivation:
        if bld.read(frontier) != st.before:
            raise DiagramError("frontier does not spell the current word")
        if st.rule == "free":
            bld.fold(frontier, st.position)
        else:
            old_len = st.size + 2 if st.rule == "y" else st.size + 3
            new = st.after[st.position:len(st.after) - (len(st.before) - st.position - old_len)]
            bld.swap(frontier, st.position, old_len, new, template)
    if bld.read(frontier) != d.edge.target.word:
        raise DiagramError("frontier does not end at the target normal form")
    outer = initial + [(e, -s) for e, s in reversed(frontier)]
    return bld.finish(start, outer)


def unfilled(d: BoxDiagram) -> CellComplex:
    """One cell per box, over the infinite presentation."""
    return _build(d, filled=False)


def fill(d: BoxDiagram) -> CellComplex:
    """Every box replaced by its filling over the two-relator presentation."""
    return _build(d, filled=True)


def cell_count(e: Edge) -> int:
    return len(fill(box_diagram(e)).cells)


def cell_count_formula(d: BoxDiagram) -> int:
    return sum(c_seq(b.size) for b in d.boxes)


def validate(e: Edge, filled: bool = True) -> list[str]:
    d = box_diagram(e)
    cx = fill(d) if filled else unfilled(d)
    problems = cx.problems(max_box=2 if filled else None)
    if cx.read(cx.outer) != d.boundary_word:
        problems.append("outer boundary does not read gamma y gamma'^-1")
    if free_reduce(cx.read(cx.outer)) != free_reduce(d.boundary_word):
        problems.append("outer boundary is not freely equal to the edge word")
    return problems


def stats(e: Edge) -> dict:
    d = box_diagram(e)
    cx = fill(d)
    out = {"boxes": [b.size for b in d.boxes], "signs": [b.crossing_sign for b in d.boxes]}
    out.update(cx.stats())
    out["prefix"] = format_word(d.prefix_path, "1")
    return out


__all__ = [
    "CellComplex",
    "FilledBox",
    "Box",
    "BoxDiagram",
    "DiagramError",
    "box_word",
    "box_complex",
    "filled_box",
    "box_diagram",
    "fill",
    "unfilled",
    "cell_count",
    "cell_count_formula",
    "validate",
    "stats",
    "NormalForm",
]
