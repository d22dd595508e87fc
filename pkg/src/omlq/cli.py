"""Command-line interface.

Exit codes: 0 every requested check passed; 1 a mathematical law is
violated (a witness is reported); 2 usage, parse, or input errors.  The
one nuance is enumeration caps: `lin` reports a blown cap as exit 1 (the
requested enumeration is the result, and it is too large), all other
commands treat it as exit 2 (the requested verification could not run).

Inputs are given as --catalog SPEC (see `omlq catalog`) or --file PATH.
Reports are printed as text by default; --format json emits the full
machine-readable payload and --format dot a Hasse diagram where the
command has one to draw.
"""

from __future__ import annotations

import argparse
import os
import sys

from .catalog import catalog, catalog_names
from .errors import (
    AmbiguousSai,
    CapExceeded,
    DomainMismatch,
    FormatError,
    NotALattice,
    NotAPoset,
    NotFoulis,
    ParamOutOfRange,
    StructureViolation,
    UnknownCatalogEntry,
)
from .foulis import FoulisQuantale, check_foulis, derive_sai, foulis_from_lin, sasaki_oml
from .goldens import golden_path, regen_goldens
from .lattice import check_oml, sasaki_apply
from .linmap import dagger, enumerate_lin, is_linear, kernel, vector_label
from .qmodule import (
    check_left_module,
    check_right_two_module,
    lin_module,
    sasaki_module,
)
from .quantale import check_involutive, check_quantale, lin_quantale
from .serialize import (
    dump_json,
    linmap_to_dict,
    load_json,
    oml_to_dict,
    parse_linmap,
    parse_module,
    parse_oml,
    parse_quantale,
    parse_structure,
    quantale_to_dict,
    structure_to_dict,
    to_dot,
)
from .verify import SELECTORS, run_verify, verify_text

_MATH_ERRORS = (NotFoulis, AmbiguousSai, StructureViolation)
_INPUT_ERRORS = (
    FormatError,
    NotAPoset,
    NotALattice,
    UnknownCatalogEntry,
    ParamOutOfRange,
    DomainMismatch,
)


def _workers(args) -> int:
    if args.workers is not None:
        return max(1, args.workers)
    return os.cpu_count() or 1


def _need_input(args):
    if args.catalog is not None and args.file is not None:
        raise FormatError("give --catalog or --file, not both")
    if args.catalog is None and args.file is None:
        raise FormatError("an input is required: --catalog SPEC or --file PATH")


def _input_oml(args):
    """The input as an OML, with a subject string for reports."""
    _need_input(args)
    if args.catalog is not None:
        return catalog(args.catalog), args.catalog
    return parse_oml(load_json(args.file)), args.file


def _input_foulis(args):
    """The input as a Foulis quantale: catalog entries go through their
    endomorphism quantale; files hold quantale tables, deriving sai when
    the file does not carry one."""
    _need_input(args)
    if args.catalog is not None:
        f, _ = foulis_from_lin(
            catalog(args.catalog), cap=args.cap, workers=_workers(args)
        )
        return f, args.catalog
    q = parse_quantale(load_json(args.file))
    if isinstance(q, FoulisQuantale):
        return q, args.file
    return FoulisQuantale(q, derive_sai(q)), args.file


def _input_map(args):
    _need_input(args)
    if args.file is None:
        raise FormatError("maps are read from files; use --file PATH")
    return parse_linmap(load_json(args.file), os.path.dirname(args.file) or None)


def _no_dot(args):
    if args.fmt == "dot":
        raise FormatError("this command has no DOT rendering")


def _report_text(report) -> str:
    lines = [f"{report.subject}: {'PASS' if report.passed else 'FAIL'}"]
    failed = {v.axiom: v.witness for v in report.violations}
    for axiom in report.axioms or [v.axiom for v in report.violations]:
        if axiom in failed:
            lines.append(f"  {axiom}: FAIL at ({', '.join(failed[axiom])})")
        else:
            lines.append(f"  {axiom}: ok")
    return "\n".join(lines) + "\n"


def _emit_reports(args, reports) -> int:
    ok = all(r.passed for r in reports)
    if args.fmt == "json":
        payload = {"passed": ok, "reports": [r.to_dict() for r in reports]}
        print(dump_json(payload), end="")
    else:
        for r in reports:
            print(_report_text(r), end="")
    return 0 if ok else 1


# ---------------------------------------------------------------------------
# subcommands

def cmd_check_oml(args) -> int:
    _no_dot(args)
    oml, subject = _input_oml(args)
    report = check_oml(oml, subject=subject, workers=_workers(args))
    return _emit_reports(args, [report])


def cmd_sasaki(args) -> int:
    _no_dot(args)
    oml, _ = _input_oml(args)
    a = oml.index(args.a)
    if args.y is not None:
        out = oml.label(sasaki_apply(oml, a, oml.index(args.y)))
        if args.fmt == "json":
            print(dump_json({"result": out}), end="")
        else:
            print(out)
        return 0
    values = {oml.label(y): oml.label(sasaki_apply(oml, a, y)) for y in range(oml.n)}
    if args.fmt == "json":
        print(dump_json({"at": args.a, "values": values}), end="")
    else:
        for y in range(oml.n):
            lab = oml.label(y)
            print(f"{lab} -> {values[lab]}")
    return 0


def cmd_lin(args) -> int:
    _no_dot(args)
    dom, _ = _input_oml(args)
    cod = None
    if args.cod is not None:
        try:
            cod = catalog(args.cod)
        except UnknownCatalogEntry:
            cod = parse_oml(load_json(args.cod))
    maps = enumerate_lin(dom, cod, cap=args.cap, workers=_workers(args))
    if args.count_only:
        print(len(maps))
        return 0
    if args.fmt == "json":
        codl = (cod or dom).labels
        arr = [[codl[v] for v in f.values] for f in maps]
        print(dump_json(arr), end="")
    else:
        for f in maps:
            print(vector_label(f))
    return 0


def cmd_adjoint(args) -> int:
    _no_dot(args)
    f = _input_map(args)
    if not is_linear(f):
        print("input map is not join-preserving; no adjoint exists", file=sys.stderr)
        return 1
    h = dagger(f)
    if args.fmt == "json":
        print(dump_json(linmap_to_dict(h)), end="")
    else:
        for y in range(h.dom.n):
            print(f"{h.dom.label(y)} -> {h.cod.label(h.values[y])}")
    return 0


def cmd_kernel(args) -> int:
    _no_dot(args)
    f = _input_map(args)
    if not is_linear(f):
        print("input map is not join-preserving; no kernel exists", file=sys.stderr)
        return 1
    kd = kernel(f)
    dom = f.dom
    members = [dom.label(p) for p in kd.sub.members]
    if args.fmt == "json":
        payload = {
            "k": dom.label(kd.k),
            "members": members,
            "embed": {
                kd.sub.oml.label(i): dom.label(v)
                for i, v in enumerate(kd.embed.values)
            },
            "coembed": {
                dom.label(i): kd.sub.oml.label(v)
                for i, v in enumerate(kd.coembed.values)
            },
        }
        print(dump_json(payload), end="")
    else:
        print(f"k = {dom.label(kd.k)}")
        print(f"kernel members: {', '.join(members)}")
    return 0


def cmd_lin_quantale(args) -> int:
    oml, subject = _input_oml(args)
    q, _ = lin_quantale(oml, cap=args.cap, workers=_workers(args))
    if args.fmt == "dot":
        print(to_dot(q), end="")
    elif args.fmt == "json":
        print(dump_json(quantale_to_dict(q)), end="")
    else:
        print(f"endomorphism quantale of {subject}: {q.n} elements")
        print(f"unit = {q.label(q.unit)}")
        print(f"zero = {q.label(q.zero)}")
    return 0


def cmd_check_quantale(args) -> int:
    _no_dot(args)
    _need_input(args)
    if args.catalog is not None:
        q, _ = lin_quantale(catalog(args.catalog), cap=args.cap, workers=_workers(args))
    else:
        q = parse_quantale(load_json(args.file))
        if isinstance(q, FoulisQuantale):
            q = q.base
    w = _workers(args)
    return _emit_reports(
        args, [check_quantale(q, workers=w), check_involutive(q, workers=w)]
    )


def cmd_check_foulis(args) -> int:
    _no_dot(args)
    f, _ = _input_foulis(args)
    return _emit_reports(args, [check_foulis(f, workers=_workers(args))])


def cmd_sasaki_lattice(args) -> int:
    f, subject = _input_foulis(args)
    sub = sasaki_oml(f)
    if args.fmt == "dot":
        print(to_dot(sub.oml), end="")
    elif args.fmt == "json":
        print(dump_json(oml_to_dict(sub.oml)), end="")
    else:
        print(f"projection lattice of {subject}: {sub.oml.n} elements")
        print("members: " + ", ".join(sub.oml.labels))
    return 0


def cmd_check_module(args) -> int:
    _no_dot(args)
    _need_input(args)
    w = _workers(args)
    if args.file is not None:
        m = parse_module(load_json(args.file), os.path.dirname(args.file) or None)
        reports = [
            check_left_module(m, workers=w),
            check_right_two_module(m.lattice, left=m, workers=w),
        ]
        return _emit_reports(args, reports)
    oml = catalog(args.catalog)
    f, view = foulis_from_lin(oml, cap=args.cap, workers=w)
    sub = sasaki_oml(f)
    lm = lin_module(oml, f.base, view)
    sm = sasaki_module(f, sub)
    reports = [
        check_left_module(lm, subject="lin-module", workers=w),
        check_left_module(sm, subject="sasaki-module", workers=w),
        check_right_two_module(oml.lattice, left=lm, subject="two-module", workers=w),
        check_right_two_module(
            sub.oml.lattice, left=sm, subject="projection-two-module", workers=w
        ),
    ]
    return _emit_reports(args, reports)


def cmd_verify(args) -> int:
    _no_dot(args)
    oml, subject = _input_oml(args)
    payload, code = run_verify(
        oml, args.selectors, subject=subject, cap=args.cap, workers=_workers(args)
    )
    if args.fmt == "json":
        print(dump_json(payload), end="")
    else:
        print(verify_text(payload), end="")
    return code


def cmd_emit(args) -> int:
    _need_input(args)
    if args.catalog is not None:
        obj = catalog(args.catalog)
    else:
        obj = parse_structure(
            load_json(args.file), os.path.dirname(args.file) or None
        )
    if args.fmt == "dot":
        print(to_dot(obj), end="")
    else:
        print(dump_json(structure_to_dict(obj)), end="")
    return 0


def cmd_catalog(args) -> int:
    names = catalog_names()
    if args.fmt == "json":
        entries = []
        for name in names:
            if "(" in name:
                entries.append({"entry": name, "elements": None})
            else:
                entries.append({"entry": name, "elements": catalog(name).n})
        print(dump_json({"entries": entries}), end="")
    else:
        for name in names:
            if "(" in name:
                print(f"{name:28} (combinator)")
            else:
                print(f"{name:28} n={catalog(name).n}")
    return 0


# ---------------------------------------------------------------------------
# parser

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--cap", type=int, default=argparse.SUPPRESS)
    common.add_argument(
        "--format",
        dest="fmt",
        choices=("text", "json", "dot"),
        default=argparse.SUPPRESS,
    )
    common.add_argument("--workers", type=int, default=argparse.SUPPRESS)
    common.add_argument(
        "--regen-goldens", action="store_true", default=argparse.SUPPRESS
    )

    inputs = argparse.ArgumentParser(add_help=False)
    inputs.add_argument("--catalog", metavar="SPEC", default=None)
    inputs.add_argument("--file", metavar="PATH", default=None)

    p = argparse.ArgumentParser(
        prog="omlq",
        description="Verification toolkit for finite orthomodular lattices "
        "and their endomorphism quantales.",
    )
    p.add_argument("--cap", type=int, default=None)
    p.add_argument(
        "--format", dest="fmt", choices=("text", "json", "dot"), default="text"
    )
    p.add_argument("--workers", type=int, default=None)
    p.add_argument("--regen-goldens", action="store_true", default=False)

    sub = p.add_subparsers(dest="cmd")

    def add(name, func, parents, help_text, **kw):
        sp = sub.add_parser(name, parents=parents, help=help_text, **kw)
        sp.set_defaults(func=func)
        return sp

    add("check-oml", cmd_check_oml, [common, inputs], "check the OML laws")
    sp = add(
        "sasaki", cmd_sasaki, [common, inputs], "evaluate a Sasaki projection"
    )
    sp.add_argument("a", help="element to project onto")
    sp.add_argument("y", nargs="?", default=None, help="element to project")
    sp = add("lin", cmd_lin, [common, inputs], "enumerate join-preserving maps")
    sp.add_argument("--cod", metavar="SPEC", default=None, help="codomain input")
    sp.add_argument("--count-only", action="store_true")
    add("adjoint", cmd_adjoint, [common, inputs], "compute the adjoint of a map")
    add("kernel", cmd_kernel, [common, inputs], "kernel data of a map")
    add(
        "lin-quantale",
        cmd_lin_quantale,
        [common, inputs],
        "build the endomorphism quantale",
    )
    add(
        "check-quantale",
        cmd_check_quantale,
        [common, inputs],
        "check quantale + involution laws",
    )
    add(
        "check-foulis",
        cmd_check_foulis,
        [common, inputs],
        "check annihilator projection axioms",
    )
    add(
        "sasaki-lattice",
        cmd_sasaki_lattice,
        [common, inputs],
        "reconstruct the projection lattice",
    )
    add(
        "check-module",
        cmd_check_module,
        [common, inputs],
        "check module action laws",
    )
    sp = add("verify", cmd_verify, [common, inputs], "run theorem pipelines")
    sp.add_argument(
        "selectors",
        nargs="+",
        choices=SELECTORS + ("all",),
        metavar="SELECTOR",
        help=f"one of: {', '.join(SELECTORS + ('all',))}",
    )
    add("emit", cmd_emit, [common, inputs], "serialize a structure (JSON or DOT)")
    add("catalog", cmd_catalog, [common], "list catalog entries")
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.cap is not None and args.cap < 1:
        print("error: --cap must be at least 1", file=sys.stderr)
        return 2
    if args.regen_goldens:
        data = regen_goldens(workers=_workers(args))
        for entry, count in sorted(data["lin_counts"].items()):
            print(f"{entry}: {count}")
        print(f"wrote {golden_path()}")
        return 0
    if getattr(args, "cmd", None) is None:
        parser.print_usage(sys.stderr)
        return 2
    try:
        return args.func(args)
    except CapExceeded as e:
        print(f"error: {e}", file=sys.stderr)
        return 1 if args.cmd == "lin" else 2
    except _MATH_ERRORS as e:
        print(f"violation: {e}", file=sys.stderr)
        return 1
    except _INPUT_ERRORS as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except OSError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
