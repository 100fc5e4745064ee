"""Command-line front door; every command reads and writes the JSON formats
of the core modules.

Exit codes: 0 success, 2 not in the recognized class, 3 parse or invariant
error, 4 internal assertion.  Set TAL_LOG to error, info or debug.
"""

from __future__ import annotations

import argparse
import logging
import os
import sys
from pathlib import Path

from .ag import derived_equivalent, phi
from .census import cycle_strata, enumerate_class
from .errors import (
    AssertionFailure,
    CapExceeded,
    ConflictingConstraints,
    InfiniteDimensional,
    InvalidParameters,
    InvariantViolation,
    NonTermination,
    NotInClass,
    PairingFailure,
    ParseError,
    SizeLimit,
    UnknownVertex,
    WorkbenchError,
)
from .gentle import GentleAlgebra, cartan, cluster_tilted
from .jsonio import dump_doc, load_doc, relations_from_doc
from .quiver import mutate, quiver_to_doc, read_quiver, write_quiver
from .report import analyze
from .structure import (
    Parameters,
    build_cycle,
    build_normal_form,
    compute_parameters,
    mutation_equivalent,
    reduce_to_normal_form,
)

EXIT_NOT_IN_CLASS = 2
EXIT_BAD_INPUT = 3
EXIT_INTERNAL = 4

_BAD_INPUT = (ParseError, InvariantViolation, UnknownVertex, InvalidParameters,
              SizeLimit, CapExceeded, InfiniteDimensional, FileNotFoundError,
              IsADirectoryError)
_INTERNAL = (AssertionFailure, NonTermination, PairingFailure, ConflictingConstraints)


def _setup_logging():
    level = os.environ.get("TAL_LOG", "error").lower()
    levels = {"error": logging.ERROR, "info": logging.INFO, "debug": logging.DEBUG}
    logging.basicConfig(level=levels.get(level, logging.ERROR),
                        format="%(levelname)s %(name)s: %(message)s")


def _read(path):
    return read_quiver(Path(path).read_bytes())


def _emit(data, out=None):
    if out:
        Path(out).write_bytes(data + b"\n")
    else:
        sys.stdout.buffer.write(data + b"\n")
        sys.stdout.buffer.flush()


def _algebra(args):
    q = _read(args.quiver)
    if args.relations:
        rel = relations_from_doc(load_doc(Path(args.relations).read_bytes()))
        return GentleAlgebra(q, rel)
    return cluster_tilted(q)


def cmd_mutate(args):
    _emit(write_quiver(mutate(_read(args.quiver), args.at)), args.output)


def cmd_params(args):
    _emit(dump_doc(compute_parameters(_read(args.quiver)).to_doc()), args.output)


def cmd_recognize(args):
    _emit(dump_doc(analyze(_read(args.quiver)).to_doc()), args.output)


def cmd_normal_form(args):
    q = build_normal_form(Parameters(args.r1, args.r2, args.s1, args.s2))
    _emit(write_quiver(q), args.output)


def cmd_reduce(args):
    trace, nf = reduce_to_normal_form(_read(args.quiver))
    doc = {"steps": trace.to_doc()["steps"], "normal_form": quiver_to_doc(nf)}
    _emit(dump_doc(doc), args.output)


def cmd_cycle_form(args):
    from .structure import to_cycle_form
    _emit(write_quiver(to_cycle_form(_read(args.quiver))), args.output)


def cmd_ag(args):
    _emit(dump_doc(phi(_algebra(args)).to_doc()), args.output)


def cmd_cartan(args):
    _emit(dump_doc(cartan(_algebra(args)).to_doc()), args.output)


def cmd_derived_eq(args):
    rec = derived_equivalent(_read(args.a), _read(args.b))
    _emit(dump_doc(rec.to_doc()), args.output)


def cmd_mutation_eq(args):
    qa, qb = _read(args.a), _read(args.b)
    doc = {
        "mutation_equivalent": mutation_equivalent(qa, qb),
        "params_a": compute_parameters(qa).to_doc(),
        "params_b": compute_parameters(qb).to_doc(),
    }
    _emit(dump_doc(doc), args.output)


def cmd_enumerate(args):
    for r_bar, s_bar in cycle_strata(args.n):
        census = enumerate_class(build_cycle(r_bar, s_bar), args.cap)
        line = {"r_bar": r_bar, "s_bar": s_bar, "census": census.to_doc()}
        sys.stdout.buffer.write(dump_doc(line) + b"\n")
        sys.stdout.buffer.flush()


def cmd_serve(args):
    from .server import serve
    serve(args.port, args.ui)


FIXTURE_PARAMS = [
    (1, 0, 1, 0), (0, 1, 1, 0), (0, 1, 0, 1), (2, 1, 1, 0), (0, 2, 1, 0),
    (1, 2, 1, 0), (1, 1, 1, 1), (2, 0, 3, 0), (1, 0, 3, 1), (2, 1, 2, 1),
    (2, 3, 3, 4), (3, 3, 4, 2),
]
FIXTURE_CYCLES = [(5, 7), (2, 3), (1, 4)]
FIXTURE_SCRAMBLES = [
    ((1, 2, 1, 0), ("c03", "c02")),
    ((2, 1, 1, 0), ("c01",)),
    ((1, 1, 1, 1), ("u02", "c00")),
    ((2, 3, 3, 4), ("c05", "u05", "c00")),
    ((0, 2, 1, 0), ("c02", "u01")),
]


def seed_fixtures(directory):
    """Write the golden fixture set consumed by the acceptance and UI tests."""
    out = Path(directory)
    out.mkdir(parents=True, exist_ok=True)
    names = []

    def put(name, q):
        (out / f"{name}.json").write_bytes(write_quiver(q) + b"\n")
        report = analyze(q)
        (out / f"{name}.analysis.json").write_bytes(dump_doc(report.to_doc()) + b"\n")
        if report.recognized:
            (out / f"{name}.params.json").write_bytes(
                dump_doc(report.parameters.to_doc()) + b"\n")
            (out / f"{name}.phi.json").write_bytes(
                dump_doc(report.invariant.to_doc()) + b"\n")
        names.append(name)

    for quad in FIXTURE_PARAMS:
        put("nf_" + "".join(str(x) for x in quad), build_normal_form(Parameters(*quad)))
    for r_bar, s_bar in FIXTURE_CYCLES:
        put(f"cycle_{r_bar}_{s_bar}", build_cycle(r_bar, s_bar))
    for quad, seq in FIXTURE_SCRAMBLES:
        q = build_normal_form(Parameters(*quad))
        for v in seq:
            q = mutate(q, v)
        put("mut_" + "".join(str(x) for x in quad) + "_" + str(len(seq)), q)

    (out / "index.json").write_bytes(dump_doc({"fixtures": names}) + b"\n")
    return names


def build_parser():
    parser = argparse.ArgumentParser(
        prog="tildea",
        description="Mutation and derived-equivalence workbench for annulus-type quivers",
    )
    parser.add_argument("--json", action="store_true",
                        help="machine-readable errors on stderr")
    parser.add_argument("--seed-fixtures", metavar="DIR",
                        help="write the golden fixture set and exit")
    sub = parser.add_subparsers(dest="command")

    def add(name, fn, **kw):
        p = sub.add_parser(name, **kw)
        p.set_defaults(fn=fn)
        return p

    p = add("mutate", cmd_mutate, help="mutate a quiver at a vertex")
    p.add_argument("quiver")
    p.add_argument("--at", required=True, metavar="V")
    p.add_argument("-o", "--output")

    for name, fn, hlp in [
        ("params", cmd_params, "canonical parameter quadruple"),
        ("recognize", cmd_recognize, "full analysis report"),
        ("reduce", cmd_reduce, "mutation trace to normal form"),
        ("cycle-form", cmd_cycle_form, "mutate to the plain cycle"),
    ]:
        p = add(name, fn, help=hlp)
        p.add_argument("quiver")
        p.add_argument("-o", "--output")

    p = add("normal-form", cmd_normal_form, help="build a normal-form quiver")
    for k in ("r1", "r2", "s1", "s2"):
        p.add_argument(f"--{k}", type=int, required=True)
    p.add_argument("-o", "--output")

    for name, fn, hlp in [
        ("ag", cmd_ag, "pairing invariant of the algebra"),
        ("cartan", cmd_cartan, "path-count Cartan matrix"),
    ]:
        p = add(name, fn, help=hlp)
        p.add_argument("quiver")
        group = p.add_mutually_exclusive_group()
        group.add_argument("--relations", metavar="FILE")
        group.add_argument("--cluster-tilted", action="store_true", default=False)
        p.add_argument("-o", "--output")

    for name, fn, hlp in [
        ("derived-eq", cmd_derived_eq, "decide derived equivalence"),
        ("mutation-eq", cmd_mutation_eq, "decide mutation equivalence"),
    ]:
        p = add(name, fn, help=hlp)
        p.add_argument("a")
        p.add_argument("b")
        p.add_argument("-o", "--output")

    p = add("enumerate", cmd_enumerate, help="stream strata censuses as NDJSON")
    p.add_argument("--n", type=int, required=True, metavar="K")
    p.add_argument("--cap", type=int, default=10 ** 6)

    p = add("serve", cmd_serve, help="run the JSON-over-HTTP service")
    p.add_argument("--port", type=int, required=True)
    p.add_argument("--ui", metavar="DIR", help="optional static UI directory")
    return parser


def main(argv=None):
    _setup_logging()
    parser = build_parser()
    args = parser.parse_args(argv)

    def report_error(code, exc):
        kind = type(exc).__name__
        if args.json:
            doc = {"error": kind, "message": str(exc)}
            if isinstance(exc, NotInClass):
                doc["reason"] = exc.reason
            sys.stderr.buffer.write(dump_doc(doc) + b"\n")
        else:
            print(f"{kind}: {exc}", file=sys.stderr)
        return code

    try:
        if args.seed_fixtures:
            seed_fixtures(args.seed_fixtures)
            return 0
        if not getattr(args, "command", None):
            parser.print_help()
            return 0
        args.fn(args)
        return 0
    except BrokenPipeError:
        # reader went away mid-stream (e.g. piped into head)
        os.dup2(os.open(os.devnull, os.O_WRONLY), sys.stdout.fileno())
        return 0
    except NotInClass as e:
        return report_error(EXIT_NOT_IN_CLASS, e)
    except _BAD_INPUT as e:
        return report_error(EXIT_BAD_INPUT, e)
    except _INTERNAL as e:
        return report_error(EXIT_INTERNAL, e)
    except WorkbenchError as e:
        return report_error(EXIT_INTERNAL, e)


if __name__ == "__main__":
    sys.exit(main())
