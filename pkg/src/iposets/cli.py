"""Command-line front end.

Exit codes: 0 success or predicate true, 1 predicate false, 2 usage or
validation error.
"""

from __future__ import annotations

import argparse
import sys

from .algebra import glue, is_isomorphic, par, subsumes
from .core import IposetError, is_interface_consistent, opposite
from .enumeration import CLASSES, census
from .fileformat import format_ipos, read_ipos
from .forbidden import explaining_fixture, known_forbidden, minimal_forbidden
from .recognition import build_witness, gp_level, gp_term, is_gp, is_interval_order, is_sp, is_step_sequence

RECOGNISERS = {
    "sp": is_sp,
    "interval": is_interval_order,
    "step": is_step_sequence,
    "gp": is_gp,
    "consistent": is_interface_consistent,
}


def _emit(P, out_path):
    text = format_ipos(P)
    if out_path:
        with open(out_path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


def _predicate(value: bool) -> int:
    print("true" if value else "false")
    return 0 if value else 1


def cmd_validate(args):
    P = read_ipos(args.file)
    print(f"ok {P.n} points {P.dom}->{P.cod}")
    return 0


def cmd_glue(args):
    return _emit(glue(read_ipos(args.a), read_ipos(args.b)), args.output)


def cmd_par(args):
    return _emit(par(read_ipos(args.a), read_ipos(args.b)), args.output)


def cmd_op(args):
    return _emit(opposite(read_ipos(args.file)), args.output)


def cmd_iso(args):
    return _predicate(is_isomorphic(read_ipos(args.a), read_ipos(args.b)) is not None)


def cmd_subsume(args):
    return _predicate(subsumes(read_ipos(args.a), read_ipos(args.b)) is not None)


def cmd_recognize(args):
    return _predicate(RECOGNISERS[args.cls](read_ipos(args.file)))


def cmd_level(args):
    level = gp_level(read_ipos(args.file))
    print("none" if level is None else level)
    return 1 if level is None else 0


def cmd_decompose(args):
    term = gp_term(read_ipos(args.file))
    print("none" if term is None else term)
    return 1 if term is None else 0


def _classes(text):
    items = [c.strip() for c in text.split(",") if c.strip()]
    bad = [c for c in items if c not in CLASSES]
    if bad or not items:
        raise argparse.ArgumentTypeError(f"classes must be a comma list from {','.join(CLASSES)}")
    return items


def cmd_census(args):
    table = census(args.max_n, args.classes, jobs=args.jobs, extended=args.extended)
    sys.stdout.write(table.to_tsv())
    return 0


def cmd_forbidden(args):
    found = minimal_forbidden(args.max_points, extended=args.extended)
    fixtures = known_forbidden()
    for i, P in enumerate(found, 1):
        name = explaining_fixture(P, [f for f in fixtures if f.n_points == P.n]) or "new"
        sys.stdout.write(f"# {i}/{len(found)} {name}\n")
        sys.stdout.write(format_ipos(P))
    return 0


def cmd_witness(args):
    if args.n < 1:
        raise IposetError("witness index starts at 1")
    return _emit(build_witness(args.n), args.output)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="iposets", description="Posets with interfaces.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="check that a file holds a valid iposet")
    p.add_argument("file")
    p.set_defaults(func=cmd_validate)

    for name, func, help_ in (("glue", cmd_glue, "gluing composition A * B"), ("par", cmd_par, "parallel composition")):
        p = sub.add_parser(name, help=help_)
        p.add_argument("a")
        p.add_argument("b")
        p.add_argument("-o", "--output")
        p.set_defaults(func=func)

    p = sub.add_parser("op", help="opposite iposet")
    p.add_argument("file")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_op)

    for name, func, help_ in (("iso", cmd_iso, "isomorphism test"), ("subsume", cmd_subsume, "is A subsumed by B")):
        p = sub.add_parser(name, help=help_)
        p.add_argument("a")
        p.add_argument("b")
        p.set_defaults(func=func)

    p = sub.add_parser("recognize", help="class membership")
    p.add_argument("--class", dest="cls", required=True, choices=sorted(RECOGNISERS))
    p.add_argument("file")
    p.set_defaults(func=cmd_recognize)

    p = sub.add_parser("level", help="hierarchy level of a gp-iposet")
    p.add_argument("file")
    p.set_defaults(func=cmd_level)

    p = sub.add_parser("decompose", help="print a gp term")
    p.add_argument("file")
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("census", help="count iso classes per class, as TSV")
    p.add_argument("--max-n", type=int, required=True)
    p.add_argument("--classes", type=_classes, default=list(CLASSES))
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--extended", action="store_true", help="lift the default size caps")
    p.set_defaults(func=cmd_census)

    p = sub.add_parser("forbidden", help="mine minimal non-gp posets")
    p.add_argument("--max-points", type=int, required=True)
    p.add_argument("--extended", action="store_true", help="allow up to 10 points")
    p.set_defaults(func=cmd_forbidden)

    p = sub.add_parser("witness", help="separator poset P_n")
    p.add_argument("n", type=int)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_witness)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (IposetError, OSError, ValueError) as exc:
        msg = str(exc).splitlines()[0] if str(exc) else type(exc).__name__
        print(f"error: {msg}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
