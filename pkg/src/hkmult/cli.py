"""``hk``: command-line front end.

Exit codes: 0 when no check is violated, 2 when some check is violated,
1 on usage, input or parse errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .corpus import DEFAULT_P, CorpusError, corpus
from .gfpoly import PolynomialError, parse_polynomial_list
from .groebner import GBBudget, set_default_budget
from .hk import default_emax
from .pipeline import (
    SCHEMA,
    PipelineConfig,
    reports_to_csv,
    reports_to_json,
    run_corpus,
    run_pipeline,
)
from .presentation import PresentationError, load_presentation
from .radical import (
    RadicalExtensionError,
    build_radical_extension,
    check_radical_bound_4_4,
    check_scaling_4_1,
    run_tower,
)
from .report import VIOLATED, inconclusive
from .report import _plain as plain


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(message)


def _fraction(text: str) -> Fraction:
    try:
        value = Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from None
    if value < 0:
        raise argparse.ArgumentTypeError("tolerance must be non-negative")
    return value


def _positive(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if value < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return value


def _common(p: argparse.ArgumentParser):
    p.add_argument("--emax", type=_positive, help="largest Frobenius exponent e (q = p^e)")
    p.add_argument("--tol", type=_fraction, help="tolerance override, e.g. 1/100")
    p.add_argument("--seed", type=int, default=0, help="seed for random parameter search")
    p.add_argument("--gb-budget", type=_positive, metavar="N",
                   help="maximum S-pairs per Groebner basis computation")
    p.add_argument("--json", nargs="?", const="-", metavar="FILE",
                   help="write JSON (to stdout when FILE is omitted)")
    p.add_argument("--csv", metavar="FILE", help="write CSV ('-' for stdout)")
    p.add_argument("--workers", type=_positive, default=1)
    p.add_argument("--timings", action="store_true", help="include wall-clock per stage")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="hk", description="Hilbert-Kunz multiplicity estimates and "
                                            "lower-bound checks over prime fields.")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    p = sub.add_parser("run", help="run every check on a presentation file")
    p.add_argument("file")
    _common(p)

    p = sub.add_parser("corpus", help="run the built-in corpus")
    p.add_argument("--only", metavar="NAME", action="append", help="restrict to entry NAME")
    p.add_argument("--char", type=int, default=DEFAULT_P, help="characteristic (default 5)")
    _common(p)

    p = sub.add_parser("radical", help="checks on S = R[v]/(v^n - z)")
    p.add_argument("file")
    p.add_argument("--z", required=True, help="minimal generator z of the maximal ideal")
    p.add_argument("--n", type=_positive, required=True, help="root degree")
    p.add_argument("--ideal", help="ideal J for the scaling check (default: maximal ideal)")
    _common(p)

    p = sub.add_parser("tower", help="iterated radical extensions")
    p.add_argument("file")
    p.add_argument("--gens", required=True, help="comma-separated y_1, ..., y_k")
    p.add_argument("--n", type=_positive, required=True)
    p.add_argument("--depth", type=int, required=True)
    _common(p)
    return parser


def _config(args) -> PipelineConfig:
    return PipelineConfig(e_max=args.emax, tol=args.tol, seed=args.seed,
                          gb_budget=args.gb_budget, workers=args.workers, timings=args.timings)


def _write(target: str | None, text: str, out):
    if target is None:
        return
    if target == "-":
        out.write(text)
    else:
        with open(target, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)


def _fmt(x) -> str:
    return "-" if x is None else f"{float(x):.6f}"


def _summary(reports) -> str:
    lines = []
    for rep in reports:
        lines.append(f"{rep.name}  (p={rep.p}, d={rep.d}, e={rep.e})  "
                     f"e_HK ~ {_fmt(rep.estimate)} +/- {_fmt(rep.tolerance)}  "
                     f"class: {rep.regularity_class}")
        rows = list(rep.bounds) + ([rep.associativity] if rep.associativity else [])
        for r in rows:
            cert = f"  [{r.certificate.kind}]" if r.certificate else ""
            lines.append(f"  {r.bound_id:<18} {r.status:<12} lhs={_fmt(r.lhs):<10} "
                         f"rhs={_fmt(r.rhs):<10}{cert}")
        for note in rep.notes:
            lines.append(f"  note: {note}")
    return "\n".join(lines) + "\n"


def _emit_reports(reports, args, config, out) -> int:
    if args.json is None and args.csv != "-":
        out.write(_summary(reports))
    _write(args.json, reports_to_json(reports, config), out)
    _write(args.csv, reports_to_csv(reports), out)
    return 2 if any(rep.violations for rep in reports) else 0


def _emit_plain(doc: dict, reports, args, out) -> int:
    if args.json is not None:
        _write(args.json, json.dumps(doc, indent=2) + "\n", out)
    else:
        for r in reports:
            cert = f"  [{r.certificate.kind}]" if r.certificate else ""
            out.write(f"{r.bound_id:<14} {r.status:<12} lhs={_fmt(r.lhs)} "
                      f"rhs={_fmt(r.rhs)}  {r.note}{cert}\n")
    return 2 if any(r.status == VIOLATED for r in reports) else 0


def _cmd_run(args, out) -> int:
    pres = load_presentation(args.file)
    config = _config(args)
    return _emit_reports([run_pipeline(pres, config)], args, config, out)


def _cmd_corpus(args, out) -> int:
    config = _config(args)
    names = args.only
    entries = corpus(args.char, only=names)
    reports = run_corpus(entries, PipelineConfig(**{**config.__dict__, "workers": 1}),
                         workers=args.workers)
    return _emit_reports(reports, args, config, out)


def _prepare(args):
    pres = load_presentation(args.file)
    if args.gb_budget:
        set_default_budget(GBBudget(max_pairs=args.gb_budget))
    R = pres.quotient_ring()
    e_max = args.emax or pres.emax or default_emax(pres.p)
    return pres, R, e_max


def _cmd_radical(args, out) -> int:
    pres, R, e_max = _prepare(args)
    ext = build_radical_extension(R, args.z, args.n)
    J = None if args.ideal is None else parse_polynomial_list(args.ideal, R.ring)
    reports = [check_scaling_4_1(ext, J, e_max=e_max, tol=args.tol)]
    params = pres.params(R.ring)
    if params is None:
        reports.append(inconclusive("radical_4_4", "no parameter ideal"))
    else:
        try:
            reports.append(check_radical_bound_4_4(ext, params, e_max=e_max, tol=args.tol))
        except RadicalExtensionError as exc:
            reports.append(inconclusive("radical_4_4", str(exc)))
    doc = {"schema": SCHEMA, "kind": "radical", "ring": pres.name,
           "extension": repr(ext.extended), "n": ext.n, "b": ext.b,
           "b_assumed": ext.b_assumed, "graded": ext.graded,
           "hypotheses": list(ext.hypotheses), "reports": [r.to_dict() for r in reports]}
    return _emit_plain(doc, reports, args, out)


def _cmd_tower(args, out) -> int:
    pres, R, e_max = _prepare(args)
    gens = parse_polynomial_list(args.gens, R.ring)
    reports, info = run_tower(R, gens, args.n, args.depth, e_max=e_max, tol=args.tol)
    doc = {"schema": SCHEMA, "kind": "tower", "ring": pres.name, "n": args.n,
           "depth": args.depth, "info": plain(info), "reports": [r.to_dict() for r in reports]}
    if info.get("truncated") and args.json is None:
        out.write(f"tower truncated: {info['truncated']}\n")
    return _emit_plain(doc, reports, args, out)


COMMANDS = {"run": _cmd_run, "corpus": _cmd_corpus, "radical": _cmd_radical,
            "tower": _cmd_tower}


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return COMMANDS[args.command](args, out)
    except UsageError as exc:
        print(f"hk: error: {exc}", file=sys.stderr)
        return 1
    except (PresentationError, PolynomialError, CorpusError, RadicalExtensionError,
            OSError, ValueError) as exc:
        print(f"hk: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
