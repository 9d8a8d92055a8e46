"""Command-line entry point: lint, catalogue browsing, and evaluation."""

from __future__ import annotations

import argparse
import os
import re
import sys
from typing import Optional

from . import engine, evaluation, report
from .catalogue import catalogue, smell_space_cell
from .model import Characteristic, Scope, SourceRef, UseCaseDescription
from .parser import parse_json, parse_text
from .textanalysis import load_lexicon

_CELL_RE = re.compile(r"^C_?\{?(\d)[,_](\d)\}?$", re.IGNORECASE)


def _build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="ucsmell",
        description="Detect bad smells in structured use case descriptions.",
    )
    sub = ap.add_subparsers(dest="subcommand", required=True)

    lint = sub.add_parser("lint", help="detect smells in description files")
    lint.add_argument("inputs", nargs="+", metavar="FILE")
    _common_options(lint)
    lint.add_argument(
        "--format",
        choices=[f.value for f in report.ReportFormat],
        default="pretty",
    )
    lint.add_argument("--fail-threshold", type=int, default=None)

    cat = sub.add_parser("catalogue", help="browse the smell catalogue")
    cat.add_argument("--cell", help="smell-space cell, e.g. C_5_2 or C_{5,2}")
    cat.add_argument(
        "--detectable", action="store_true", help="only automatically detectable smells"
    )

    ev = sub.add_parser("eval", help="compare findings against an oracle")
    ev.add_argument("inputs", nargs=1, metavar="FILE")
    ev.add_argument("--oracle", required=True)
    _common_options(ev)
    return ap


def _common_options(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--config", help="detector config file (key=value lines)")
    sub.add_argument("--lexicon", help="lexicon file overriding the bundled one")
    sub.add_argument("--stddev-k", type=float, default=None)
    sub.add_argument("--min-sentences-for-distribution", type=int, default=None)
    sub.add_argument("--disable", action="append", default=[], metavar="SMELL_ID")


def _load_detector_config(args) -> engine.DetectorConfig:
    path = args.config or os.environ.get("UCSMELL_CONFIG")
    cfg = engine.load_config(path) if path else engine.DetectorConfig()
    overrides = {}
    if args.stddev_k is not None:
        overrides["stddev_k"] = args.stddev_k
    if args.min_sentences_for_distribution is not None:
        overrides["min_sentences_for_distribution"] = args.min_sentences_for_distribution
    if args.disable:
        enabled = cfg.enabled_smells
        if enabled is None:
            from .catalogue import detectable_ids

            enabled = detectable_ids()
        overrides["enabled_smells"] = frozenset(enabled) - set(args.disable)
    if overrides:
        from dataclasses import replace

        cfg = replace(cfg, **overrides)
    return cfg


def _parse_file(path: str) -> tuple[Optional[UseCaseDescription], list]:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except (OSError, UnicodeDecodeError) as exc:
        print(f"{path}: {exc}", file=sys.stderr)
        return None, []
    parse = parse_json if path.endswith(".json") else parse_text
    return parse(text, SourceRef(path))


def _report_diagnostics(path: str, diags) -> None:
    for d in diags:
        print(f"{path}:{d.line}: {d.severity.value}: {d.message}", file=sys.stderr)


def _cmd_lint(args) -> int:
    cfg = _load_detector_config(args)
    lex = load_lexicon(args.lexicon)
    fmt = report.ReportFormat(args.format)
    options = report.ReportOptions(format=fmt, fail_threshold=args.fail_threshold)

    per_file: list[tuple[str, list]] = []
    for path in args.inputs:
        doc, diags = _parse_file(path)
        _report_diagnostics(path, diags)
        if doc is None:
            return report.EXIT_PARSE_ERROR
        per_file.append((path, engine.detect(doc, cfg, lex)))

    if fmt is report.ReportFormat.JSON:
        if len(per_file) == 1:
            sys.stdout.write(report.emit_json(per_file[0][1]) + "\n")
        else:
            import json

            obj = {
                path: [report.finding_record(f) for f in findings]
                for path, findings in per_file
            }
            sys.stdout.write(json.dumps(obj, indent=2, ensure_ascii=False) + "\n")
    else:
        for path, findings in per_file:
            sys.stdout.write(report.emit_pretty(findings, source_name=path))

    total = sum(len(f) for _, f in per_file)
    return report.exit_code(total, options)


def _cmd_catalogue(args) -> int:
    entries = catalogue()
    if args.cell:
        m = _CELL_RE.match(args.cell.strip())
        if not m:
            print(f"unrecognized cell: {args.cell}", file=sys.stderr)
            return 2
        try:
            characteristic = Characteristic(int(m.group(1)))
            scope = Scope(int(m.group(2)))
        except ValueError:
            print(f"cell out of range: {args.cell}", file=sys.stderr)
            return 2
        entries = smell_space_cell(characteristic, scope)
    if args.detectable:
        entries = [e for e in entries if e.detectable]
    blocks = []
    for e in entries:
        blocks.append(
            "\n".join(
                [
                    f"Name: {e.name}",
                    f"Characteristic: {e.characteristic.title}",
                    f"Scope: {e.scope.title}",
                    f"Symptom: {e.symptom}",
                    f"How to Detect: {e.how_to_detect}",
                ]
            )
        )
    sys.stdout.write("\n\n".join(blocks) + ("\n" if blocks else ""))
    return 0


def _cmd_eval(args) -> int:
    cfg = _load_detector_config(args)
    lex = load_lexicon(args.lexicon)
    path = args.inputs[0]
    doc, diags = _parse_file(path)
    _report_diagnostics(path, diags)
    if doc is None:
        return report.EXIT_PARSE_ERROR
    try:
        with open(args.oracle, encoding="utf-8") as fh:
            oracle = evaluation.load_oracle(fh.read())
    except (OSError, ValueError, KeyError) as exc:
        print(f"{args.oracle}: {exc}", file=sys.stderr)
        return report.EXIT_PARSE_ERROR
    findings = engine.detect(doc, cfg, lex)
    result = evaluation.match(findings, oracle)
    sys.stdout.write(evaluation.render_table(result))
    return 0


def run(argv: Optional[list[str]] = None) -> int:
    args = _build_parser().parse_args(argv)
    if args.subcommand == "lint":
        return _cmd_lint(args)
    if args.subcommand == "catalogue":
        return _cmd_catalogue(args)
    return _cmd_eval(args)


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
