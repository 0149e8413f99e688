"""Command line interface.

Exit codes: 0 success, 1 domain or validation error, 2 usage or parse error.
"""

import argparse
import json
import os
import sys

from .bicomplex import build_ce_bicomplex, summarize
from .constructions import BlowupStep, evaluate_blowup_sequence
from .diamond import delta, is_ddbar, validate_model
from .errors import DdbarError, ParseError, ShapeError
from .expressions import evaluate, load_source
from .registry import (format_document, builtin, dumps_model, read_model, read_structure,
                       write_model)
from .bicomplex import StructureEquations
from .verify import SUITES, run_suite


class UsageError(Exception):
    pass


def render_diamond(table, indent="  "):
    """Hodge-diamond layout: top row h(n,n), bottom row h(0,0), h(p,q) with p decreasing left to right."""
    n = table.n
    width = max(len(str(x)) for _, x in table.items()) + 1
    lines = []
    for s in range(2 * n, -1, -1):
        cells = [" " * width] * (2 * n + 1)
        for p in range(min(s, n), max(0, s - n) - 1, -1):
            cells[n - p + (s - p)] = str(table[p, s - p]).rjust(width)
        lines.append((indent + "".join(cells)).rstrip())
    return "\n".join(lines)


def _ints(xs):
    return " ".join(str(x) for x in xs)


def format_model(m, fmt, strict=True):
    dv = delta(m)
    verdict = is_ddbar(m, strict=strict)
    if fmt == "json":
        return dumps_model(m, extra={"delta": list(dv.delta), "verdict": verdict})
    return "\n".join([
        f"name: {m.name}",
        f"dim: {m.n}",
        f"betti: {_ints(m.betti)}",
        "bott-chern:",
        render_diamond(m.bott_chern),
        f"delta: {_ints(dv.delta)}",
        f"ddbar: {str(verdict).lower()}",
    ]) + "\n"


def format_summary(s, fmt):
    if fmt == "json":
        return format_document({
            "name": s.name,
            "dim": s.n,
            "betti": list(s.betti.b),
            "dolbeault": [list(r) for r in s.dolbeault.h],
            "bott_chern": [list(r) for r in s.bott_chern.h],
            "aeppli": [list(r) for r in s.aeppli.h],
            "delta": list(s.delta.delta),
            "verdict": s.ddbar_verdict,
        })
    return "\n".join([
        f"name: {s.name}",
        f"dim: {s.n}",
        f"betti: {_ints(s.betti)}",
        "dolbeault:", render_diamond(s.dolbeault),
        "bott-chern:", render_diamond(s.bott_chern),
        "aeppli:", render_diamond(s.aeppli),
        f"delta: {_ints(s.delta.delta)}",
        f"ddbar: {str(s.ddbar_verdict).lower()}",
    ]) + "\n"


def _model_from_args(args):
    if args.builtin:
        return load_source(f"builtin:{args.builtin}")
    return read_model(args.file)


def _strict_check(m, args):
    if args.lenient:
        return
    report = validate_model(m)
    if not report.ok:
        raise DdbarError("invalid-model", f"{m.name}:\n{report}")


def cmd_inspect(args, out):
    m = _model_from_args(args)
    _strict_check(m, args)
    out.write(format_model(m, args.format, strict=not args.lenient))


def cmd_decide(args, out):
    m = _model_from_args(args)
    out.write(f"{str(is_ddbar(m, strict=not args.lenient)).lower()}\n")


def cmd_construct(args, out):
    m = evaluate(args.expression)
    _strict_check(m, args)
    if args.out:
        write_model(m, args.out)
    out.write(format_model(m, args.format, strict=not args.lenient))


def cmd_ce_compute(args, out):
    if args.builtin:
        try:
            S = builtin(args.builtin)
        except DdbarError as e:
            raise ParseError(detail=e.detail) from None
        if not isinstance(S, StructureEquations):
            raise UsageError(f"builtin {args.builtin!r} is a closed-form model, not structure equations")
    elif args.file:
        S = read_structure(args.file)
    else:
        raise UsageError("ce-compute needs a structure file or --builtin")
    name = S.name or os.path.splitext(os.path.basename(args.file or ""))[0]
    out.write(format_summary(summarize(build_ce_bicomplex(S), name), args.format))


def cmd_verify(args, out):
    res = run_suite(args.suite, seed=args.seed, count=args.count)
    out.write(res.summary() + "\n")
    for msg in res.failures:
        out.write(f"  counterexample: {msg}\n")
    return 0 if res.ok else 1


def _load_steps(path):
    try:
        with open(path, encoding="utf-8") as f:
            doc = json.load(f)
    except OSError as e:
        raise ParseError(detail=f"cannot read {path}: {e.strerror}") from None
    except json.JSONDecodeError as e:
        raise ParseError(detail=f"malformed steps file: {e}") from None
    if isinstance(doc, dict):
        doc = doc.get("steps")
    if not isinstance(doc, list):
        raise ParseError(detail="steps file must be a list of steps or {\"steps\": [...]}")
    base = os.path.dirname(os.path.abspath(path))
    steps = []
    for i, item in enumerate(doc):
        if not isinstance(item, dict) or not {"direction", "center", "codim"} <= set(item):
            raise ParseError(detail=f"step {i}: need direction, center and codim")
        codim = item["codim"]
        if isinstance(codim, bool) or not isinstance(codim, int):
            raise ParseError(detail=f"step {i}: codim must be an integer")
        steps.append(BlowupStep(item["direction"], evaluate(item["center"], base_dir=base), codim))
    return steps


def cmd_sequence(args, out):
    start = _model_from_args(args)
    steps = _load_steps(args.steps)
    results = evaluate_blowup_sequence(start, steps, allow_unrecorded=args.allow_unrecorded)
    if args.format == "json":
        doc = [{"step": i + 1, "direction": st.direction, "center": st.center.name,
                "codim": st.codim, "model": r.model.name, "betti": list(r.model.betti.b),
                "delta": list(r.delta.delta), "verdict": r.verdict}
               for i, (st, r) in enumerate(zip(steps, results))]
        out.write(json.dumps(doc, indent=2) + "\n")
    else:
        out.write(f"start: {start.name} delta: {_ints(delta(start).delta)} "
                  f"ddbar: {str(is_ddbar(start, strict=False)).lower()}\n")
        for i, (st, r) in enumerate(zip(steps, results), 1):
            out.write(f"step {i}: {st.direction} along {st.center.name} (codim {st.codim}) -> "
                      f"{r.model.name} delta: {_ints(r.delta.delta)} "
                      f"ddbar: {str(r.verdict).lower()}\n")
    if args.out:
        write_model(results[-1].model if results else start, args.out)


def build_parser():
    parser = argparse.ArgumentParser(
        prog="ddbar",
        description="Non-Kählerness degrees, dd^c-lemma decisions and cohomology of double complexes.")
    sub = parser.add_subparsers(dest="command", required=True)

    def model_source(p, required=True):
        g = p.add_mutually_exclusive_group(required=required)
        g.add_argument("--builtin", metavar="NAME", help="point, torus:N, cpn:N, iwasawa, ...")
        g.add_argument("--file", metavar="PATH", help=".ddm model document")

    def fmt(p):
        p.add_argument("--format", choices=("table", "json"), default="table")

    def lenient(p):
        p.add_argument("--lenient", action="store_true",
                       help="skip realizability checks and only evaluate the formula")

    p = sub.add_parser("inspect", help="print tables, degrees and verdict of a model")
    model_source(p)
    fmt(p)
    lenient(p)
    p.set_defaults(func=cmd_inspect)

    p = sub.add_parser("decide", help="print true/false for the dd^c-property")
    model_source(p)
    lenient(p)
    p.set_defaults(func=cmd_decide)

    p = sub.add_parser("construct", help="evaluate a construction expression")
    p.add_argument("expression")
    p.add_argument("--out", metavar="PATH", help="write the result as a canonical .ddm")
    fmt(p)
    lenient(p)
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("ce-compute", help="cohomology of a nilmanifold from structure equations")
    p.add_argument("file", nargs="?", help=".ceq structure equations")
    p.add_argument("--builtin", metavar="NAME", help="iwasawa, kodaira-thurston, abelian:M")
    fmt(p)
    p.set_defaults(func=cmd_ce_compute)

    p = sub.add_parser("verify", help="run an invariant suite")
    p.add_argument("suite", choices=sorted(SUITES))
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--count", type=int, default=None, help="number of random samples")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("sequence", help="evaluate a sequence of blow-ups and blow-downs")
    model_source(p)
    p.add_argument("steps", help="JSON list of {direction, center, codim}")
    p.add_argument("--allow-unrecorded", action="store_true",
                   help="accept down-steps that do not undo an earlier blow-up")
    p.add_argument("--out", metavar="PATH", help="write the final model as a canonical .ddm")
    fmt(p)
    p.set_defaults(func=cmd_sequence)
    return parser


def main(argv=None, out=None, err=None):
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return e.code
    try:
        return args.func(args, out) or 0
    except (ParseError, ShapeError, UsageError) as e:
        err.write(f"error: {e}\n")
        return 2
    except DdbarError as e:
        err.write(f"error: {e}\n")
        return 1


if __name__ == "__main__":
    sys.exit(main())
