"""
Command-line front end.

Examples
--------
::

    einstab list-catalog
    einstab check --spec s6.json
    echo '{"type":"cpn","complex_dim":2}' | einstab gauss-bonnet
    einstab check --catalog "S^2 x S^2" --human
    einstab selftest --seed 3
"""

from __future__ import annotations

import argparse
import json
import sys

from . import report, specs
from .catalog import validate
from .errors import InputError, NumericError
from .gauss_bonnet import gauss_bonnet
from .kahler import kahler_spectra
from .selftest import run as run_selftest
from .spectra import eigen_functions, sectional_range
from .stability import CRITERIA_GROUPS, evaluate_all

EXIT_OK, EXIT_INPUT, EXIT_NUMERIC = 0, 1, 2


def _diagnose(kind: str, message: str, path: str | None = None) -> str:
    doc = {"error": kind, "message": message}
    if path is not None:
        doc["path"] = path
    return json.dumps(doc, sort_keys=True)


def _load_spec(args) -> specs.ManifoldSpec:
    if args.catalog is not None:
        if args.catalog not in specs.CATALOG_SPECS:
            raise specs.SpecError("$", f"unknown catalog entry {args.catalog!r}")
        return specs.spec_from_dict(specs.CATALOG_SPECS[args.catalog])
    if args.spec is None or args.spec == "-":
        data = sys.stdin.buffer.read()
    else:
        try:
            with open(args.spec, "rb") as fh:
                data = fh.read()
        except OSError as exc:
            raise specs.SpecError("$", f"cannot read {args.spec}: {exc.strerror}") from None
    return specs.parse_spec(data)


def _parse_criteria(text: str | None) -> list[str] | None:
    if text is None or text.strip() in ("", "all"):
        return None
    ids = [s.strip() for s in text.split(",") if s.strip()]
    bad = [s for s in ids if s not in CRITERIA_GROUPS]
    if bad:
        raise specs.SpecError("--criteria", f"unknown criterion id {bad[0]!r}")
    return ids


def build_document(args) -> dict:
    """Run one command and return its report document (no I/O on stdout)."""
    if args.command == "list-catalog":
        doc = report.envelope("list-catalog", None, args.seed)
        doc["catalog"] = {name: spec for name, spec in specs.CATALOG_SPECS.items()}
        return doc

    if args.command == "selftest":
        checks = run_selftest(args.seed)
        doc = report.envelope("selftest", None, args.seed)
        passed = sum(c.passed for c in checks)
        doc["selftest"] = {
            "passed": passed,
            "failed": len(checks) - passed,
            "checks": [{"name": c.name, "value": c.value, "tolerance": c.tolerance,
                        "passed": c.passed} for c in checks],
        }
        return doc

    spec = _load_spec(args)
    model = specs.build(spec)
    doc = report.envelope(args.command, specs.spec_to_dict(spec), args.seed)
    doc["model"] = report.model_summary(model)

    if args.command == "describe":
        doc["validation"] = [report.plain(c) for c in validate(model).checks]
        if model.dim >= 3:
            doc["spectra"] = report.plain(eigen_functions(model, sectional=True, seed=args.seed))
        else:
            lo, hi = sectional_range(model, seed=args.seed)
            doc["spectra"] = {"sectional_min": lo, "sectional_max": hi}
        if model.complex_structure is not None:
            doc["kahler_spectra"] = report.plain(kahler_spectra(model))
    elif args.command == "check":
        rep = evaluate_all(model, _parse_criteria(args.criteria), seed=args.seed)
        doc["criteria_filter"] = _parse_criteria(args.criteria) or "all"
        doc["stability"] = report.stability_dict(rep)
    elif args.command == "gauss-bonnet":
        doc["gauss_bonnet"] = report.plain(gauss_bonnet(model))
    return doc


class _Parser(argparse.ArgumentParser):
    """Usage errors are input errors: exit 1 with a one-line JSON diagnostic."""

    def error(self, message):
        self.exit(EXIT_INPUT, _diagnose("usage", message) + "\n")


def make_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="einstab", description=__doc__.split("\n")[1].strip() or None)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0, help="seed for sampled quantities (default 0)")
    common.add_argument("--human", action="store_true", help="print a plain-text rendering")
    with_spec = argparse.ArgumentParser(add_help=False)
    src = with_spec.add_mutually_exclusive_group()
    src.add_argument("--spec", metavar="PATH", help="spec file ('-' or omitted: standard input)")
    src.add_argument("--catalog", metavar="NAME", help="use a built-in catalog entry")

    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("list-catalog", parents=[common], help="list built-in models")
    sub.add_parser("describe", parents=[common, with_spec], help="validation and curvature spectra")
    chk = sub.add_parser("check", parents=[common, with_spec], help="run stability criteria")
    chk.add_argument("--criteria", metavar="LIST",
                     help="comma-separated ids: " + ",".join(CRITERIA_GROUPS))
    sub.add_parser("gauss-bonnet", parents=[common, with_spec], help="Euler characteristic routes")
    sub.add_parser("selftest", parents=[common], help="seeded property suite")
    return parser


def main(argv: list[str] | None = None) -> int:
    args = make_parser().parse_args(argv)
    try:
        doc = build_document(args)
    except specs.SpecError as exc:
        print(_diagnose("input", exc.message, exc.path), file=sys.stderr)
        return EXIT_INPUT
    except InputError as exc:
        print(_diagnose("input", str(exc)), file=sys.stderr)
        return EXIT_INPUT
    except NumericError as exc:
        print(_diagnose("numeric", str(exc)), file=sys.stderr)
        return EXIT_NUMERIC
    sys.stdout.write(report.render_human(doc) if args.human else report.dumps(doc))
    if doc.get("selftest", {}).get("failed"):
        return EXIT_NUMERIC
    return EXIT_OK


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
