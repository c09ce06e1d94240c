"""Command-line front end.

Subcommands: classify | table | representative | verify | explain3.
Machine output goes to stdout, diagnostics to stderr.  Exit codes:
0 success, 1 usage or input error, 2 classification gap.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys

from .documents import DocumentError, emit_document, parse_document
from .explain import explain_three_qubit, render_explain_text
from .fields import FieldMismatchError, field_from_descriptor
from .suites import SUITE_NAMES, run_suite
from .tables import (
    ClassificationGapError,
    LabelValidityError,
    UnsupportedShapeError,
    classify_full,
    representative,
    table_for,
)
from .tensors import BasisError, Shape, ShapeError, random_invertible


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits with code 2 on bad usage; remap to the 0/1/2 contract
    def error(self, message):
        raise _UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="entinv",
        description="Exact kernel invariants and entanglement classes for "
        "two- and three-subsystem pure states.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", help="classify a tensor document")
    p.add_argument("path", help="tensor document path, or - for stdin")
    p.add_argument("--field", help="require the document to use this field")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(handler=_cmd_classify)

    p = sub.add_parser("table", help="print a class table")
    p.add_argument("--family", choices=("22d", "23d", "bipartite"), required=True)
    p.add_argument("--d", type=int, help="third-factor dimension (tripartite families)")
    p.add_argument("--d1", type=int, help="first dimension (bipartite)")
    p.add_argument("--d2", type=int, help="second dimension (bipartite)")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(handler=_cmd_table)

    p = sub.add_parser("representative", help="emit a class representative document")
    p.add_argument("--family", choices=("22d", "23d", "bipartite"), required=True)
    p.add_argument("--d", type=int)
    p.add_argument("--d1", type=int)
    p.add_argument("--d2", type=int)
    p.add_argument("--label", required=True)
    p.add_argument("--generic-seed", type=int, default=None,
                   help="draw random invertible bases instead of the standard basis")
    p.add_argument("--field", default="rational")
    p.add_argument("--sparse", action="store_true", help="emit sparse entries")
    p.set_defaults(handler=_cmd_representative)

    p = sub.add_parser("verify", help="run a verification suite")
    p.add_argument("--suite", choices=SUITE_NAMES, required=True)
    p.add_argument("--d-max", type=int, default=8)
    p.add_argument("--samples", type=int, default=None)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--field", default="rational")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(handler=_cmd_verify)

    p = sub.add_parser("explain3", help="kernel walkthrough for a (2,2,2) document")
    p.add_argument("path", help="tensor document path, or - for stdin")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(handler=_cmd_explain3)

    return parser


def _read_input(path: str) -> tuple[str, str]:
    if path == "-":
        text = sys.stdin.read()
        return text, "<stdin>"
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return fh.read(), path
    except OSError as exc:
        raise DocumentError(f"cannot read {path}: {exc}") from exc


def _shape_for(args) -> Shape:
    if args.family == "bipartite":
        if args.d1 is None or args.d2 is None:
            raise _UsageError("family bipartite needs --d1 and --d2")
        return Shape((args.d1, args.d2))
    if args.d is None:
        raise _UsageError(f"family {args.family} needs --d")
    if args.d < 2:
        raise _UsageError(f"family {args.family} needs --d >= 2, got {args.d}")
    base = {"22d": 2, "23d": 3}[args.family]
    return Shape((2, base, args.d))


def _cmd_classify(args) -> int:
    text, source = _read_input(args.path)
    digest = hashlib.sha256(text.encode("utf-8")).hexdigest()
    tensor = parse_document(text, source=source)
    if args.field is not None:
        wanted = field_from_descriptor(args.field)
        if wanted != tensor.field:
            raise DocumentError(
                f"{source}: document field {tensor.field.descriptor} does not match "
                f"--field {wanted.descriptor}"
            )
    report = {
        "command": "classify",
        "input": source,
        "input_sha256": digest,
        "field": tensor.field.descriptor,
        "dims": list(tensor.shape.dims),
    }
    try:
        label, sig = classify_full(tensor)
    except ClassificationGapError as exc:
        report["signature"] = exc.signature.as_dict()
        report["class"] = None
        report["gap"] = exc.payload()
        print(json.dumps(report, indent=2))
        print(f"classification gap: {exc}", file=sys.stderr)
        return 2
    report["signature"] = sig.as_dict()
    report["class"] = label
    if args.format == "json":
        print(json.dumps(report, indent=2))
    else:
        print(f"input: {source} (sha256 {digest[:12]})")
        print(f"field: {tensor.field.descriptor}")
        print(f"dims: {tensor.shape.dims}")
        print(f"signature: {sig}")
        print(f"class: {label}")
    return 0


def _cmd_table(args) -> int:
    shape = _shape_for(args)
    table = table_for(shape)
    rows = []
    for entry in table.entries:
        values = entry.invariants_at(shape)
        if table.family == "bipartite":
            invariants = {"k1": values[0]}
        else:
            invariants = dict(zip(("k1", "k2", "k3", "k123"), values))
        rows.append({"label": entry.label, "invariants": invariants,
                     "representative": entry.bracket()})
    if args.format == "json":
        print(json.dumps({"family": table.family, "dims": list(shape.dims), "classes": rows},
                         indent=2))
        return 0
    heads = ["label"] + list(rows[0]["invariants"]) + ["representative"]
    cells = [[r["label"], *map(str, r["invariants"].values()), r["representative"]] for r in rows]
    widths = [max(len(h), *(len(c[i]) for c in cells)) for i, h in enumerate(heads)]
    print(f"family {table.family}, dims {shape.dims}: {len(rows)} classes")
    print("  ".join(h.ljust(w) for h, w in zip(heads, widths)))
    for c in cells:
        print("  ".join(x.ljust(w) for x, w in zip(c, widths)))
    return 0


def _cmd_representative(args) -> int:
    shape = _shape_for(args)
    field = field_from_descriptor(args.field)
    bases = None
    if args.generic_seed is not None:
        bases = [
            random_invertible(d, 3, seed=args.generic_seed + 101 * axis, field=field)
            for axis, d in enumerate(shape.dims)
        ]
    tensor = representative(args.label, shape, bases=bases, field=field)
    sys.stdout.write(emit_document(tensor, sparse=args.sparse))
    return 0


def _cmd_verify(args) -> int:
    field = field_from_descriptor(args.field)
    report = run_suite(
        args.suite, d_max=args.d_max, samples=args.samples, seed=args.seed, field=field
    )
    if args.format == "json":
        print(json.dumps(report.to_dict(), indent=2))
    else:
        print(report.render_text())
    if report.passed:
        return 0
    return 2 if report.has_gap else 1


def _cmd_explain3(args) -> int:
    text, source = _read_input(args.path)
    tensor = parse_document(text, source=source)
    data = explain_three_qubit(tensor)
    if args.format == "json":
        print(json.dumps(data, indent=2))
    else:
        print(render_explain_text(data))
    return 0


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 1
    try:
        return args.handler(args)
    except _UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 1
    except ClassificationGapError as exc:
        # commands that do not handle gaps themselves (e.g. explain3)
        print(json.dumps(exc.payload(), indent=2))
        print(f"classification gap: {exc}", file=sys.stderr)
        return 2
    except (
        DocumentError,
        ShapeError,
        BasisError,
        UnsupportedShapeError,
        LabelValidityError,
        FieldMismatchError,
        ValueError,
    ) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def run():
    sys.exit(main())


if __name__ == "__main__":
    run()
