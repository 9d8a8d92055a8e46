"""Finding serialization: the JSON record format, a human-readable
listing, and exit-code policy.

Each JSON record carries, in order, item_name, metric, line, and exactly
one of word / sentence / flow depending on the evidence kind. Key order
and array ordering are fixed so golden-file tests stay byte-exact.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from enum import Enum
from typing import Optional

from .catalogue import by_id, catalogue
from .model import (
    Characteristic,
    Finding,
    FlowEvidence,
    Scope,
    SentenceEvidence,
    WordEvidence,
)

EXIT_OK = 0
EXIT_FINDINGS = 1
EXIT_PARSE_ERROR = 2


class ReportFormat(Enum):
    JSON = "json"
    PRETTY = "pretty"


class GroupBy(Enum):
    SMELL = "smell"
    SECTION = "section"
    LINE = "line"


@dataclass(frozen=True)
class ReportOptions:
    format: ReportFormat = ReportFormat.PRETTY
    group_by: GroupBy = GroupBy.LINE
    fail_threshold: Optional[int] = None

    def __post_init__(self) -> None:
        if self.fail_threshold is not None and self.fail_threshold < 0:
            raise ValueError("fail_threshold must be >= 0")


def exit_code(findings_count: int, options: ReportOptions) -> int:
    threshold = options.fail_threshold if options.fail_threshold is not None else 1
    return EXIT_FINDINGS if findings_count >= threshold else EXIT_OK


def finding_record(f: Finding) -> dict:
    rec: dict = {"item_name": f.item_name, "metric": f.metric, "line": f.line}
    if isinstance(f.evidence, WordEvidence):
        rec["word"] = f.evidence.text
    elif isinstance(f.evidence, SentenceEvidence):
        rec["sentence"] = f.evidence.text
    elif isinstance(f.evidence, FlowEvidence):
        rec["flow"] = list(f.evidence.items)
    else:
        raise TypeError(f"unknown evidence type: {f.evidence!r}")
    return rec


def emit_json(findings: list[Finding]) -> str:
    return json.dumps(
        [finding_record(f) for f in findings], indent=2, ensure_ascii=False
    )


def parse_report(text: str) -> list[dict]:
    """Parse emit_json output back into record dicts, checking shape."""
    records = json.loads(text)
    if not isinstance(records, list):
        raise ValueError("report must be a JSON array")
    for rec in records:
        evidence_keys = {"word", "sentence", "flow"} & set(rec)
        if len(evidence_keys) != 1:
            raise ValueError(
                f"record must carry exactly one of word/sentence/flow: {rec}"
            )
    return records


def _excerpt(f: Finding, limit: int = 60) -> str:
    if isinstance(f.evidence, WordEvidence):
        text = f.evidence.text
    elif isinstance(f.evidence, SentenceEvidence):
        text = f.evidence.text
    else:
        text = ", ".join(f.evidence.items)
    return text if len(text) <= limit else text[: limit - 3] + "..."


def emit_pretty(
    findings: list[Finding],
    source_name: str = "",
    group_by: GroupBy = GroupBy.LINE,
) -> str:
    lines: list[str] = []
    ordered = list(findings)
    if group_by is GroupBy.SMELL:
        ordered.sort(key=lambda f: (f.smell_id, f.line))
    elif group_by is GroupBy.SECTION:
        ordered.sort(key=lambda f: (f.item_name, f.line, f.smell_id))
    for f in ordered:
        smell = by_id(f.smell_id)
        lines.append(
            f"{source_name}:{f.line}: [{f.smell_id}] {smell.name} - {_excerpt(f)}"
        )
    if not findings:
        lines.append("no smells detected")
    lines.append("")
    lines.extend(_grid_lines(findings))
    return "\n".join(lines) + "\n"


def _grid_lines(findings: list[Finding]) -> list[str]:
    counts: dict[tuple[Characteristic, Scope], int] = {}
    for f in findings:
        cell = by_id(f.smell_id).cell
        counts[cell] = counts.get(cell, 0) + 1

    scopes = list(Scope)
    width = max(len(c.title) for c in Characteristic) + 2
    col = max(len(s.title) for s in scopes) + 2
    header = " " * width + "".join(s.title.rjust(col) for s in scopes) + "Total".rjust(col)
    lines = [header]
    total = 0
    for c in Characteristic:
        row_counts = [counts.get((c, s), 0) for s in scopes]
        total += sum(row_counts)
        lines.append(
            c.title.ljust(width)
            + "".join(str(n).rjust(col) for n in row_counts)
            + str(sum(row_counts)).rjust(col)
        )
    lines.append("Total".ljust(width) + " " * (col * len(scopes)) + str(total).rjust(col))
    return lines


def render(
    findings: list[Finding], options: ReportOptions, source_name: str = ""
) -> str:
    if options.format is ReportFormat.JSON:
        return emit_json(findings) + "\n"
    return emit_pretty(findings, source_name, options.group_by)


__all__ = [
    "EXIT_FINDINGS",
    "EXIT_OK",
    "EXIT_PARSE_ERROR",
    "GroupBy",
    "ReportFormat",
    "ReportOptions",
    "emit_json",
    "emit_pretty",
    "exit_code",
    "finding_record",
    "parse_report",
    "render",
]
