"""Command-line interface: ``thompsonf <verb> ...``.

Every verb prints plain deterministic text, one result per line, or a single
JSON object with ``--json``.  Exit status is 0 on success, 1 on a domain error
(bad word, edge in the tree, exhausted budget, bad usage) and 2 when a
verification fails.

Budgets come from the environment: ``THOMPSONF_MAX_STEPS`` (prefix-rewriting
steps), ``THOMPSONF_MAX_ITER`` (flow iterations) and ``THOMPSONF_LENGTH_CAP``
(longest intermediate word while normalizing).
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import automata, cprs, diagrams, oracle, sweeps
from .flow import BOUND, DEFAULT_MAX_ITER, DirectedPath, flow_to_tree, format_path, phi
from .normal_form import NormalForm, PreconditionError, ResourceLimitError, sigma_normalize
from .ordering import Edge, size_sequence, weight
from .words import WordSyntaxError, format_word, parse

EXIT_OK, EXIT_DOMAIN, EXIT_VERIFY = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _fmt(w: str) -> str:
    return format_word(w, "1")


def _edge(word: str, gen: str) -> Edge:
    a = parse(gen)
    if len(a) != 1:
        raise UsageError(f"expected a single generator, got {gen!r}")
    return Edge(NormalForm.from_word(parse(word)), a)


class Output:
    """Collects text lines and the JSON payload of one command."""

    def __init__(self, as_json: bool):
        self.as_json = as_json
        self.lines: list[str] = []
        self.data: dict = {}

    def line(self, text: str = ""):
        self.lines.append(text)

    def emit(self, stream) -> None:
        if self.as_json:
            stream.write(json.dumps(self.data, sort_keys=True) + "\n")
        elif self.lines:
            stream.write("\n".join(self.lines) + "\n")


# --- verbs ----------------------------------------------------------------------


def cmd_nf(args, out: Output) -> int:
    w = parse(args.word)
    g, deriv = sigma_normalize(w)
    if args.trace:
        out.line(deriv.render() if len(deriv) else "   (already in normal form)")
        out.data["steps"] = [
            {"rule": s.tag, "position": s.position, "before": _fmt(s.before), "after": _fmt(s.after)}
            for s in deriv.steps
        ]
    out.line(_fmt(g.word))
    out.data["normal_form"] = _fmt(g.word)
    return EXIT_OK


def cmd_solve(args, out: Output) -> int:
    r1 = cprs.rewrite_to_irreducible(parse(args.w1)).word
    r2 = cprs.rewrite_to_irreducible(parse(args.w2)).word
    same = r1 == r2
    out.line("equal" if same else "not equal")
    out.data.update(equal=same, irreducible=[_fmt(r1), _fmt(r2)])
    return EXIT_OK


def cmd_flow(args, out: Output) -> int:
    e = _edge(args.word, args.gen)
    p = phi(e)
    ends_ok = p.end == e.target
    out.line(f"edge      {e}")
    out.line(f"in_tree   {'yes' if e.in_tree else 'no'}")
    out.line(f"phi       {_fmt(p.label)}")
    out.line(f"length    {len(p)}")
    out.line(f"endpoint  {'ok' if ends_ok else 'MISMATCH'}")
    out.data.update(
        edge=str(e), in_tree=e.in_tree, phi=_fmt(p.label), length=len(p), endpoint_ok=ends_ok, bound=BOUND
    )
    return EXIT_OK if ends_ok and len(p) <= BOUND else EXIT_VERIFY


def cmd_flow_iterate(args, out: Output) -> int:
    start = NormalForm.from_word(parse(args.start))
    p = DirectedPath(start, parse(args.label))
    tr = flow_to_tree(p, args.max_iter)
    for k, q in enumerate(tr.iterations):
        out.line(f"{k:4d}  {format_path(q)}")
    out.line(f"n_p {tr.n_p}" if tr.terminated else f"not in the tree after {args.max_iter} iterations")
    out.data.update(
        iterations=[_fmt(q.label) for q in tr.iterations], terminated=tr.terminated, n_p=tr.n_p
    )
    return EXIT_OK if tr.terminated else EXIT_VERIFY


def cmd_weight(args, out: Output) -> int:
    e = _edge(args.word, args.gen)
    if e.in_tree:
        raise PreconditionError(f"edge {e} lies in the tree")
    sig, w = size_sequence(e), weight(e)
    out.line(f"sigma   ({', '.join(map(str, sig))})")
    out.line(f"weight  {w}")
    out.data.update(edge=str(e), sigma=list(sig), weight=w)
    return EXIT_OK


def cmd_rewrite(args, out: Output) -> int:
    res = cprs.rewrite_to_irreducible(parse(args.word), trace=args.trace)
    if args.trace:
        for st in res.trace:
            out.line(st.render())
        out.data["steps"] = [
            {"rule": st.rule.rule_id, "split": st.split, "guard": st.rule.guard_name, "witness": _fmt(st.prefix),
             "before": _fmt(st.before), "after": _fmt(st.after)}
            for st in res.trace
        ]
    out.line(_fmt(res.word))
    out.data.update(irreducible=_fmt(res.word), n_steps=res.steps)
    return EXIT_OK


def cmd_fsa(args, out: Output) -> int:
    d = automata.nf_automaton() if args.which == "nf" else automata.graph_phi_automaton()
    text = d.export()
    if args.out:
        Path(args.out).write_text(text)
        out.line(f"wrote {args.out} ({d.n_states} states, {len(d.alphabet)} symbols)")
    else:
        out.lines.append(text.rstrip("\n"))
    out.data.update(which=args.which, states=d.n_states, symbols=len(d.alphabet), path=args.out)
    return EXIT_OK


def cmd_diagram(args, out: Output) -> int:
    e = _edge(args.word, args.gen)
    if args.stats:
        st = diagrams.stats(e)
        for k, v in st.items():
            out.line(f"{k:<16} {v}")
        out.data.update(st)
        return EXIT_OK
    cx = diagrams.fill(diagrams.box_diagram(e))
    if args.format == "dot":
        out.lines.append(cx.to_dot().rstrip("\n"))
        out.data["dot"] = cx.to_dot()
    else:
        d = diagrams.box_diagram(e)
        out.line(f"boxes  {' '.join(map(str, d.sizes))}")
        out.line(f"cells  {len(cx.cells)}")
        out.data.update(boxes=list(d.sizes), cells=len(cx.cells))
    return EXIT_OK


def cmd_oracle(args, out: Output) -> int:
    m = oracle.evaluate(parse(args.word))
    out.line(m.format())
    out.data["breakpoints"] = [[str(a), str(b)] for a, b in m.breakpoints]
    return EXIT_OK


def cmd_verify(args, out: Output) -> int:
    names = list(sweeps.SUITES) if args.suite == "all" else [args.suite]
    ok = True
    out.data["suites"] = []
    for name in names:
        res = sweeps.run_suite(name, args.max_len)
        ok &= res.ok
        out.line(res.line())
        for msg in res.failures:
            out.line(f"    {msg}")
        out.data["suites"].append(
            {"name": name, "ok": res.ok, "checked": res.checked, "failures": res.n_failures,
             "examples": res.failures, **res.info}
        )
    return EXIT_OK if ok else EXIT_VERIFY


# --- wiring ---------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="thompsonf", description="Normal forms, flow and rewriting for Thompson's group F.")
    p.add_argument("--json", action="store_true", help="print one JSON object instead of text")
    sub = p.add_subparsers(dest="verb", required=True, parser_class=_Parser)

    s = sub.add_parser("nf", help="normal form of a word")
    s.add_argument("word")
    s.add_argument("--trace", action="store_true", help="print the derivation")
    s.set_defaults(func=cmd_nf)

    s = sub.add_parser("solve", help="decide whether two words are equal in F")
    s.add_argument("w1")
    s.add_argument("w2")
    s.set_defaults(func=cmd_solve)

    s = sub.add_parser("flow", help="flow path of one edge")
    s.add_argument("word")
    s.add_argument("gen")
    s.set_defaults(func=cmd_flow)

    s = sub.add_parser("flow-iterate", help="iterate the flow on a path until it lies in the tree")
    s.add_argument("start")
    s.add_argument("label")
    s.add_argument("--max-iter", type=int, default=DEFAULT_MAX_ITER)
    s.set_defaults(func=cmd_flow_iterate)

    s = sub.add_parser("weight", help="size sequence and weight of an edge")
    s.add_argument("word")
    s.add_argument("gen")
    s.set_defaults(func=cmd_weight)

    s = sub.add_parser("rewrite", help="rewrite with the prefix-rewriting system")
    s.add_argument("word")
    s.add_argument("--trace", action="store_true", help="print every guarded step")
    s.set_defaults(func=cmd_rewrite)

    s = sub.add_parser("fsa", help="finite-state automata")
    fsub = s.add_subparsers(dest="action", required=True, parser_class=_Parser)
    e = fsub.add_parser("export", help="write a transition table")
    e.add_argument("--which", choices=("nf", "graphphi"), required=True)
    e.add_argument("--out", help="output path (default: standard output)")
    e.set_defaults(func=cmd_fsa)

    s = sub.add_parser("diagram", help="filled box diagram of an edge")
    s.add_argument("word")
    s.add_argument("gen")
    s.add_argument("--format", choices=("text", "dot"), default="text")
    s.add_argument("--stats", action="store_true", help="box sizes and cell counts")
    s.set_defaults(func=cmd_diagram)

    s = sub.add_parser("oracle", help="piecewise-linear evaluation")
    osub = s.add_subparsers(dest="action", required=True, parser_class=_Parser)
    e = osub.add_parser("eval", help="breakpoints of the map of a word")
    e.add_argument("word")
    e.set_defaults(func=cmd_oracle)

    s = sub.add_parser("verify", help="run a property sweep")
    s.add_argument("--suite", choices=(*sweeps.SUITES, "all"), required=True)
    s.add_argument("--max-len", type=int, default=None)
    s.set_defaults(func=cmd_verify)
    return p


def run(argv: list[str] | None = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        args = build_parser().parse_args(argv)
    except UsageError as exc:
        stderr.write(f"thompsonf: usage error: {exc}\n")
        return EXIT_DOMAIN
    out = Output(args.json)
    try:
        code = args.func(args, out)
    except WordSyntaxError as exc:
        code = _domain_error(out, stderr, f"bad word at position {exc.position}: {exc}")
    except (UsageError, PreconditionError, ResourceLimitError, cprs.StepBudgetExceeded) as exc:
        code = _domain_error(out, stderr, str(exc))
    out.emit(stdout)
    return code


def _domain_error(out: Output, stderr, message: str) -> int:
    out.lines.clear()
    out.data = {"error": message}
    if not out.as_json:
        stderr.write(f"thompsonf: {message}\n")
    return EXIT_DOMAIN


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
