"""Command-line entry point ``crsym``.

Exit codes: 0 success, 1 field not tangent (``check-field``), 2 bad input,
3 degenerate model, 4 a structural prediction disagrees with the solver.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys

from . import catalog
from .encoding import (
    SchemaError,
    certificate_to_json,
    dumps,
    field_to_json,
    load_field,
    load_model,
    model_to_json,
    report_to_json,
    report_to_text,
)
from .fields import UndefinedWeight, tangency_residual, weight_of
from .grading import full_algebra, weight_label
from .model import ValidationError, holomorphic_nondegeneracy
from .scan import ScanConfig, run_scan
from .structure import annotate

EXIT_OK = 0
EXIT_NOT_TANGENT = 1
EXIT_SCHEMA = 2
EXIT_DEGENERATE = 3
EXIT_DISCREPANCY = 4

log = logging.getLogger("crsym")


def _load_model_or_exit(path: str):
    try:
        return load_model(path)
    except OSError as exc:
        print(f"error: cannot read {path}: {exc.strerror}", file=sys.stderr)
    except (SchemaError, ValidationError) as exc:
        print(f"error: {path}: {exc}", file=sys.stderr)
    raise SystemExit(EXIT_SCHEMA)


def cmd_analyze(args) -> int:
    model = _load_model_or_exit(args.model)
    cert = holomorphic_nondegeneracy(model)
    if not cert.verdict:
        out = {"model": model_to_json(model), "certificate": certificate_to_json(cert)}
        if args.format == "json":
            sys.stdout.write(dumps(out))
        else:
            print("model is holomorphically degenerate")
            print(f"witness: {out['certificate']['witness']}")
        return EXIT_DEGENERATE
    report = full_algebra(model, certificate=cert, check_closure=not args.no_closure)
    annotate(report)
    data = report_to_json(report, cert)
    if args.format == "json":
        sys.stdout.write(dumps(data))
    else:
        print(report_to_text(data))
    if data["structure"]["discrepancies"] or data["closure_failures"]:
        return EXIT_DISCREPANCY
    return EXIT_OK


def cmd_scan(args) -> int:
    try:
        cfg = ScanConfig(
            args.degree_bound,
            dedupe=args.dedupe,
            jobs=args.jobs,
            random_coefficients=args.random_coefficients,
            seed=args.seed,
            closure=args.closure,
        )
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_SCHEMA

    def progress(i, total):
        if i % 100 == 0 or i == total:
            log.info("analyzed %d/%d models", i, total)

    atlas = run_scan(cfg, progress)
    if args.output == "-":
        sys.stdout.write(dumps(atlas))
    else:
        try:
            with open(args.output, "w", encoding="utf-8") as fh:
                fh.write(dumps(atlas))
        except OSError as exc:
            print(f"error: cannot write {args.output}: {exc.strerror}", file=sys.stderr)
            return EXIT_SCHEMA
        sys.stdout.write(dumps(atlas["summary"]))
    return EXIT_DISCREPANCY if atlas["summary"]["discrepancies"] else EXIT_OK


def cmd_check_field(args) -> int:
    model = _load_model_or_exit(args.model)
    try:
        x = load_field(args.field, model.n)
    except OSError as exc:
        print(f"error: cannot read {args.field}: {exc.strerror}", file=sys.stderr)
        return EXIT_SCHEMA
    except SchemaError as exc:
        print(f"error: {args.field}: {exc}", file=sys.stderr)
        return EXIT_SCHEMA
    try:
        mu = weight_of(x, model.d)
        label = "inhomogeneous" if mu is None else weight_label(mu)
    except UndefinedWeight:
        label = "undefined (zero field)"
    residual = tangency_residual(x, model)
    print(f"weight: {label}")
    print(f"tangent: {'yes' if residual.is_zero() else 'no'}")
    if not residual.is_zero():
        print(f"residual: {residual}")
        return EXIT_NOT_TANGENT
    return EXIT_OK


def cmd_examples(args) -> int:
    if args.name is None:
        for name in list(catalog.CATALOG) + list(catalog.FIELDS):
            print(name)
        return EXIT_OK
    if args.name in catalog.FIELDS:
        sys.stdout.write(dumps(field_to_json(catalog.FIELDS[args.name]())))
        return EXIT_OK
    try:
        model = catalog.get(args.name)
    except KeyError as exc:
        print(f"error: {exc.args[0]}", file=sys.stderr)
        return EXIT_SCHEMA
    sys.stdout.write(dumps(model_to_json(model)))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="crsym", description="Infinitesimal CR automorphisms of model hypersurfaces.")
    p.add_argument("-v", "--verbose", action="count", default=0, help="log progress to stderr")
    sub = p.add_subparsers(dest="command", required=True)

    a = sub.add_parser("analyze", help="compute the graded algebra of one model")
    a.add_argument("model", help="model spec JSON file")
    a.add_argument("--format", choices=["json", "text"], default="json")
    a.add_argument("--no-closure", action="store_true", help="skip the bracket closure check")
    a.set_defaults(func=cmd_analyze)

    s = sub.add_parser("scan", help="analyze every nondegenerate monomial triple up to a degree")
    s.add_argument("--degree-bound", type=int, required=True)
    s.add_argument("--dedupe", action="store_true", help="one model per permutation/swap class")
    s.add_argument("--jobs", type=int, default=1)
    s.add_argument("--random-coefficients", action="store_true")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--closure", action="store_true", help="also check bracket closure per model")
    s.add_argument("-o", "--output", required=True, help="atlas JSON path, or - for stdout")
    s.set_defaults(func=cmd_scan)

    c = sub.add_parser("check-field", help="test a vector field for tangency")
    c.add_argument("model")
    c.add_argument("field")
    c.set_defaults(func=cmd_check_field)

    e = sub.add_parser("examples", help="print a built-in model or field as JSON")
    e.add_argument("name", nargs="?", help="omit to list the names")
    e.set_defaults(func=cmd_examples)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.WARNING - 10 * min(args.verbose, 2), format="%(name)s: %(message)s")
    return args.func(args)


if __name__ == "__main__":
    raise SystemExit(main())
