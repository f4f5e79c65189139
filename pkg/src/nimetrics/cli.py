"""Command-line interface.

Subcommands: ``report``, ``ni``, ``case``, ``map {acc,pre,rec,pr-region,
pr-surface,fr-surface}``, ``rank``. Exit codes: 0 on success, 2 for usage,
file, or parse problems, 3 for domain errors (degenerate target, infeasible
parameters).
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from pathlib import Path

from . import __version__, maps
from .closedform import classify_case, ni_closed, ni_from_counts
from .confusion import ConfusionMatrix, read_confusion_json, read_label_pairs_csv
from .errors import (
    DegenerateTargetError,
    InfeasibleParameterError,
    InvariantViolationError,
)
from .export import rows_for_curve, rows_for_point, rows_for_surface, write_dataset
from .ranking import ModelRecord, rank, table_report

EXIT_USAGE = 2
EXIT_DOMAIN = 3


class _InputError(Exception):
    """Bad input file or value: maps to exit code 2."""


def _load_matrix(args) -> ConfusionMatrix:
    try:
        if args.format == "json-matrix":
            return read_confusion_json(args.input)
        return read_label_pairs_csv(
            args.input, args.positive_label, has_header=not args.no_header
        )
    except (OSError, json.JSONDecodeError, csv.Error, ValueError) as exc:
        raise _InputError(f"cannot read {args.input}: {exc}") from exc


def _add_input_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("input", help="input file")
    p.add_argument(
        "--format",
        choices=("json-matrix", "csv-pairs"),
        default="json-matrix",
        help="json-matrix: object with tp/fp/tn/fn; csv-pairs: target,predicted rows",
    )
    p.add_argument("--positive-label", default="1",
                   help="label counted as positive in csv-pairs input")
    p.add_argument("--no-header", action="store_true",
                   help="csv-pairs input has no header row")


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="nimetrics",
        description="Normalized mutual information for binary classifier evaluation",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p_report = sub.add_parser("report", help="full index report for one matrix")
    _add_input_args(p_report)
    p_report.add_argument("--output", choices=("text", "json"), default="text")
    p_report.add_argument("--decimals", type=int, default=4)

    p_ni = sub.add_parser("ni", help="print the NI of one matrix")
    _add_input_args(p_ni)
    p_ni.add_argument("--both", action="store_true",
                      help="print the direct and closed-form values plus |difference|")

    p_case = sub.add_parser("case", help="print the zero-pattern case of one matrix")
    _add_input_args(p_case)

    p_map = sub.add_parser("map", help="export relation-map datasets")
    p_map.add_argument(
        "kind",
        choices=("acc", "pre", "rec", "pr-region", "pr-surface", "fr-surface"),
    )
    p_map.add_argument("--w1", type=float, required=True, help="positive-class size")
    p_map.add_argument("--w2", type=float, required=True, help="negative-class size")
    p_map.add_argument("--samples", type=int, default=201,
                       help="samples per curve (projection maps and region)")
    p_map.add_argument("--nx", type=int, default=201, help="surface grid columns")
    p_map.add_argument("--ny", type=int, default=201, help="surface grid rows")
    p_map.add_argument("--mode", choices=("ideal", "actual"), default="actual",
                       help="pr-surface: blank infeasible cells (actual) or not")
    p_map.add_argument("--swap-classes", action="store_true",
                       help="swap w1/w2 when given in the wrong order")
    p_map.add_argument("--out", default=".", help="output directory")

    p_rank = sub.add_parser("rank", help="rank named models by NI and accuracy")
    p_rank.add_argument("input", help="JSON list or CSV of named matrices")
    p_rank.add_argument("--literal-def4", action="store_true",
                        help="verbatim pairwise rule instead of complement "
                             "normalization")
    p_rank.add_argument("--output", choices=("text", "csv", "json"), default="text")
    p_rank.add_argument("--decimals", type=int, default=4)
    return parser


def _cmd_report(args) -> int:
    cm = _load_matrix(args)
    ni_d = ni_from_counts(cm)
    ni_c = ni_closed(cm)
    if ni_d is None:
        raise DegenerateTargetError("target entropy is zero")
    case = classify_case(cm)
    record = ModelRecord(name=Path(args.input).stem, cm=cm)
    rep = record.report
    d = args.decimals
    if args.output == "json":
        payload = {
            "input": str(args.input),
            "tp": cm.tp, "fp": cm.fp, "tn": cm.tn, "fn": cm.fn,
            "w1": cm.w1, "w2": cm.w2,
            "case": int(case),
            "accuracy": rep.accuracy,
            "precision": rep.precision,
            "recall": rep.recall,
            "false_alarm": rep.false_alarm,
            "ni_direct": ni_d,
            "ni_closed": ni_c,
            "ni_path_difference": abs(ni_d - ni_c),
        }
        print(json.dumps(payload, indent=2, sort_keys=True))
        return 0

    def fmt(v):
        return "undef" if v is None else f"{v:.{d}f}"

    print(f"counts       tp={cm.tp:g} fp={cm.fp:g} tn={cm.tn:g} fn={cm.fn:g}")
    print(f"class sizes  w1={cm.w1:g} w2={cm.w2:g}")
    print(f"case         {case.value} ({case.name})")
    print(f"accuracy     {fmt(rep.accuracy)}")
    print(f"precision    {fmt(rep.precision)}")
    print(f"recall       {fmt(rep.recall)}")
    print(f"false alarm  {fmt(rep.false_alarm)}")
    print(f"ni (direct)  {fmt(ni_d)}")
    print(f"ni (closed)  {fmt(ni_c)}")
    print(f"|difference| {abs(ni_d - ni_c):.3e}")
    return 0


def _cmd_ni(args) -> int:
    cm = _load_matrix(args)
    ni_d = ni_from_counts(cm)
    if ni_d is None:
        raise DegenerateTargetError("target entropy is zero")
    if args.both:
        ni_c = ni_closed(cm)
        print(f"{ni_d:.17g} {ni_c:.17g} {abs(ni_d - ni_c):.3e}")
    else:
        print(f"{ni_d:.17g}")
    return 0


def _cmd_case(args) -> int:
    cm = _load_matrix(args)
    case = classify_case(cm)
    print(f"{case.value} ({case.name})")
    return 0


def _cmd_map(args) -> int:
    w1, w2 = args.w1, args.w2
    kind = args.kind
    config = {
        "kind": kind, "w1": w1, "w2": w2,
        "samples": args.samples, "nx": args.nx, "ny": args.ny,
        "mode": args.mode if kind == "pr-surface" else None,
        "swap_classes": args.swap_classes,
    }
    rows: list = []
    if kind in ("acc", "pre", "rec"):
        points = maps.special_points(kind, w1, w2, swap=args.swap_classes)
        curves = maps.boundary_curves(kind, w1, w2, args.samples,
                                      swap=args.swap_classes)
        for point in points:
            rows.extend(rows_for_point(point))
        for curve in curves:
            rows.extend(rows_for_curve(curve))
        name = f"map_{kind}"
    elif kind == "pr-region":
        apex, curves = maps.feasible_region_pr(w1, w2, args.samples,
                                               swap=args.swap_classes)
        rows.extend(rows_for_point(apex))
        for curve in curves:
            rows.extend(rows_for_curve(curve))
        name = "map_pr_region"
    elif kind == "pr-surface":
        grid = maps.surface_pr(w1, w2, args.nx, args.ny, mode=args.mode)
        rows.extend(rows_for_surface(grid))
        name = f"map_pr_surface_{args.mode}"
    else:
        grid = maps.surface_fr(w1, w2, args.nx, args.ny)
        rows.extend(rows_for_surface(grid))
        name = "map_fr_surface"
    csv_path, manifest_path = write_dataset(args.out, name, rows, config, __version__)
    print(csv_path)
    print(manifest_path)
    return 0


def _load_models(path: str) -> list[ModelRecord]:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise _InputError(f"cannot read {path}: {exc}") from exc
    try:
        if path.endswith(".json"):
            entries = json.loads(text)
            if not isinstance(entries, list):
                raise ValueError("expected a JSON list of models")
        else:
            entries = list(csv.DictReader(text.splitlines()))
        models = []
        for e in entries:
            models.append(
                ModelRecord(
                    name=str(e["name"]),
                    cm=ConfusionMatrix(
                        tp=float(e["tp"]), fp=float(e["fp"]),
                        tn=float(e["tn"]), fn=float(e["fn"]),
                    ),
                )
            )
    except (KeyError, TypeError, ValueError, json.JSONDecodeError) as exc:
        raise _InputError(f"cannot parse models from {path}: {exc}") from exc
    if not models:
        raise _InputError(f"no models found in {path}")
    return models


def _cmd_rank(args) -> int:
    models = _load_models(args.input)
    ranking = rank(models, literal=args.literal_def4)
    if args.output == "json":
        payload = {
            "ordering": ranking.ordering(),
            "models": [m.display_name for m in ranking.records],
            "rationale": list(ranking.rationale),
            "notes": list(ranking.notes),
        }
        print(json.dumps(payload, indent=2, sort_keys=True))
        return 0
    print(ranking.ordering())
    for line in ranking.rationale:
        print(f"  {line}")
    for note in ranking.notes:
        print(f"note: {note}")
    print()
    print(table_report(ranking.records, fmt=args.output, decimals=args.decimals))
    return 0


_COMMANDS = {
    "report": _cmd_report,
    "ni": _cmd_ni,
    "case": _cmd_case,
    "map": _cmd_map,
    "rank": _cmd_rank,
}


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except _InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (DegenerateTargetError, InfeasibleParameterError,
            InvariantViolationError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
