"""Command line entry point (``kumar``)."""

from __future__ import annotations

import argparse
import os
import sys
from concurrent.futures import ThreadPoolExecutor

from .correspondence import (
    CorrespondenceError,
    Pair,
    Triple,
    bundle_check,
    chern,
    check_triple,
    forward,
    resolution_of,
    reverse,
)
from .document import Document, DocumentError, load_document, pair_document, triple_document
from .matrix import GradedMatrix, HomogeneityError
from .modules import Presentation, Submodule, free_resolution
from .report import Check, Report, Status
from .suite import EXAMPLES, example_triple_or_pair, verify_example

DEFAULT_FIELD = 32003
EXIT_USAGE = 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _field(args) -> int | None:
    """``--field`` wins over ``KUMAR_FIELD``; ``None`` keeps the document's own prime."""
    if args.field is not None:
        return args.field
    env = os.environ.get("KUMAR_FIELD")
    if env:
        try:
            return int(env)
        except ValueError:
            raise UsageError(f"KUMAR_FIELD must be an integer, got {env!r}")
    return None


def _load(args) -> Document:
    if not args.input:
        raise UsageError("--in is required")
    return load_document(args.input, _field(args))


def _write(args, doc: Document) -> None:
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(str(doc))


def _pair_report(rep: Report, P: Pair, budget: int | None, max_length: int | None) -> None:
    res = resolution_of(P, max_length)
    rep.note("resolution of E", res.shape())
    rep.note("betti", list(res.ranks))
    if not res.truncated:
        rep.note("chern of E", chern(res))
    rep.add(bundle_check(P, budget))


# -- subcommands -------------------------------------------------------------


def cmd_forward(args) -> Report:
    T = _load(args).triple()
    rep = Report()
    if args.check:
        rep.extend(check_triple(T, args.budget), "triple ")
    P = forward(T)
    _write(args, pair_document(P))
    _pair_report(rep, P, args.budget, args.max_length)
    return rep


def cmd_reverse(args) -> Report:
    P = _load(args).pair()
    rep = Report()
    if args.check:
        rep.add(bundle_check(P, args.budget))
    T, res = reverse(P)
    rep.note("labelled generators", len(res.labels))
    rep.note("minimal generators", res.M.ngens)
    _write(args, triple_document(T))
    rep.extend(check_triple(T, args.budget), "triple ")
    return rep


def cmd_check(args) -> Report:
    return check_triple(_load(args).triple(), args.budget)


def cmd_bundle_check(args) -> Report:
    rep = Report()
    rep.add(bundle_check(_load(args).pair(), args.budget))
    return rep


def cmd_chern(args) -> Report:
    P = _load(args).pair()
    res = resolution_of(P, args.max_length)
    rep = Report()
    if res.truncated:
        rep.add(Check("chern", Status.INCONCLUSIVE, f"resolution truncated at length {args.max_length}"))
        return rep
    ch = chern(res)
    rep.note("chern of E", ch)
    if args.twist:
        rep.note(f"chern of E({args.twist})", ch.twist(args.twist))
    return rep


def _matrix(doc: Document, name: str | None) -> GradedMatrix:
    mats = doc.matrices
    if not mats:
        raise UsageError("the document has no matrix")
    if name is None:
        return next(iter(mats.values()))
    if name not in mats:
        raise UsageError(f"no matrix named {name!r}")
    return mats[name]


def cmd_resolve(args) -> Report:
    A = _matrix(_load(args), args.matrix)
    res = free_resolution(Presentation(A), args.max_length)
    rep = Report()
    rep.note("resolution", res.shape())
    rep.note("betti", list(res.ranks))
    if res.truncated:
        rep.note("truncated", f"after {res.length} differentials")
    return rep


def cmd_gb(args) -> Report:
    doc = _load(args)
    A = _matrix(doc, args.matrix)
    cols = Submodule(A).groebner().columns()
    rep = Report()
    rep.note("groebner basis size", len(cols))
    source = []
    for k, col in enumerate(cols):
        i = next(i for i, e in enumerate(col) if e.terms)
        source.append(A.target[i] - col[i].degree())
        rep.note(f"g{k + 1}", "[" + ", ".join(str(e) for e in col) + "]")
    if args.out:
        out = Document(doc.ring_name, doc.ring)
        out.add_matrix("gb", GradedMatrix.from_columns(doc.ring, cols, A.target, source))
        _write(args, out)
    return rep


def cmd_example(args) -> Report:
    field = _field(args) or DEFAULT_FIELD
    if args.all:
        jobs = [(name, None) for name in EXAMPLES]
    else:
        if args.name is None:
            raise UsageError("example needs a name or --all")
        if args.name != "cotangent" and args.n is not None:
            raise UsageError(f"example {args.name} takes no size argument")
        jobs = [(args.name, args.n)]
    if not (args.verify or args.all):
        obj = example_triple_or_pair(jobs[0][0], jobs[0][1], field)
        doc = triple_document(obj) if isinstance(obj, Triple) else pair_document(obj)
        if args.out:
            _write(args, doc)
        else:
            sys.stdout.write(str(doc))
        return Report()
    with ThreadPoolExecutor() as pool:
        futures = [pool.submit(verify_example, name, n, args.budget, field) for name, n in jobs]
        reports = [f.result() for f in futures]
    rep = Report()
    for (name, n), r in zip(jobs, reports):
        label = name if n is None else f"{name} {n}"
        rep.extend(r, f"{label}: " if len(jobs) > 1 else "")
    return rep


# -- parser ------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--in", dest="input", metavar="FILE", help="input .km document")
    common.add_argument("--out", metavar="FILE", help="write the resulting document here")
    common.add_argument("--field", type=int, help="prime field (overrides KUMAR_FIELD and the document)")
    common.add_argument("--budget", type=int, metavar="MINORS", help="stop minor enumeration after this many minors")
    common.add_argument("--max-length", type=int, metavar="K", help="truncate resolutions after K differentials")
    common.add_argument("--check", action="store_true", help="also verify the input")
    common.add_argument("--verify", action="store_true", help="run the full verification report")
    common.add_argument("--no-timings", action="store_true", help="omit TIME lines")

    p = _Parser(prog="kumar", description="Triples, pairs and vector bundles on projective space.")
    sub = p.add_subparsers(dest="command", parser_class=_Parser, metavar="COMMAND")
    sub.required = True
    specs = [
        ("forward", cmd_forward, "triple -> pair"),
        ("reverse", cmd_reverse, "pair -> triple"),
        ("check", cmd_check, "verify a triple"),
        ("bundle-check", cmd_bundle_check, "verify that a pair defines a bundle"),
        ("chern", cmd_chern, "Chern classes of a pair's E"),
        ("resolve", cmd_resolve, "minimal free resolution of coker of a matrix"),
        ("gb", cmd_gb, "Groebner basis of the column span of a matrix"),
        ("example", cmd_example, "built-in examples"),
    ]
    for name, fn, text in specs:
        sp = sub.add_parser(name, parents=[common], help=text)
        sp.set_defaults(func=fn)
        if name == "chern":
            sp.add_argument("--twist", type=int, default=0, help="also report E(t)")
        if name in ("resolve", "gb"):
            sp.add_argument("--matrix", help="matrix name (default: the first one)")
        if name == "example":
            sp.add_argument("name", nargs="?", choices=EXAMPLES)
            sp.add_argument("n", nargs="?", type=int, help="cotangent: even n")
            sp.add_argument("--all", action="store_true", help="verify every example")
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        rep = args.func(args)
    except (UsageError, DocumentError, HomogeneityError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except CorrespondenceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    text = rep.render(timings=not args.no_timings)
    if text:
        print(text)
    return rep.exit_code


if __name__ == "__main__":
    sys.exit(main())
