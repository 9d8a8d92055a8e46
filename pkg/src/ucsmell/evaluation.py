"""Precision/recall evaluation of detector findings against a
human-annotated oracle.

A finding matches an oracle entry when both name the same smell and
section and their line numbers differ by at most one (annotations made
on printed sheets are only approximately line-aligned). Matching is
one-to-one and greedy over line-sorted entries, which yields a maximum
matching for the +/-1 interval criterion.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Optional

from .catalogue import by_id
from .model import (
    Characteristic,
    Finding,
    FlowEvidence,
    Scope,
    SentenceEvidence,
    WordEvidence,
)

LINE_TOLERANCE = 1

Category = tuple[Characteristic, Scope]


@dataclass(frozen=True)
class OracleEntry:
    smell_id: str
    item_name: str
    line: int
    evidence_hint: Optional[str] = None


@dataclass
class Tally:
    tp: int = 0
    fp: int = 0
    fn: int = 0

    @property
    def precision(self) -> Optional[float]:
        total = self.tp + self.fp
        return self.tp / total if total else None

    @property
    def recall(self) -> Optional[float]:
        total = self.tp + self.fn
        return self.tp / total if total else None


@dataclass
class EvalReport:
    per_category: dict[Category, Tally] = field(default_factory=dict)
    totals: Tally = field(default_factory=Tally)
    matched_pairs: list[tuple[Finding, OracleEntry]] = field(default_factory=list)


def load_oracle(source: str) -> list[OracleEntry]:
    """Load oracle entries from a JSON array; exact duplicates collapse."""
    try:
        data = json.loads(source)
    except json.JSONDecodeError as exc:
        raise ValueError(f"invalid oracle JSON: {exc}") from exc
    if not isinstance(data, list):
        raise ValueError("oracle must be a JSON array")
    entries: list[OracleEntry] = []
    seen = set()
    for i, obj in enumerate(data):
        if not isinstance(obj, dict):
            raise ValueError(f"oracle entry {i} must be an object")
        try:
            entry = OracleEntry(
                smell_id=obj["smell_id"],
                item_name=obj["item_name"],
                line=obj["line"],
                evidence_hint=obj.get("evidence_hint"),
            )
        except KeyError as exc:
            raise ValueError(f"oracle entry {i} missing key {exc}") from None
        if not isinstance(entry.smell_id, str) or not isinstance(entry.line, int):
            raise ValueError(f"oracle entry {i} has wrong field types")
        by_id(entry.smell_id)  # raises KeyError on unknown ids
        if entry not in seen:
            seen.add(entry)
            entries.append(entry)
    return entries


def _evidence_text(f: Finding) -> str:
    ev = f.evidence
    if isinstance(ev, (WordEvidence, SentenceEvidence)):
        return ev.text
    if isinstance(ev, FlowEvidence):
        return " ".join(ev.items)
    return ""


def _category(smell_id: str) -> Category:
    return by_id(smell_id).cell


def match(findings: list[Finding], oracle: list[OracleEntry]) -> EvalReport:
    for entry in oracle:
        by_id(entry.smell_id)  # validate before tallying

    report = EvalReport()

    def tally(category: Category) -> Tally:
        return report.per_category.setdefault(category, Tally())

    # Group both sides by (smell, section); match within each group by
    # pairing line-sorted oracle entries to the earliest compatible finding.
    findings_by_key: dict[tuple[str, str], list[Finding]] = {}
    for f in findings:
        findings_by_key.setdefault((f.smell_id, f.item_name), []).append(f)
    oracle_by_key: dict[tuple[str, str], list[OracleEntry]] = {}
    for entry in oracle:
        oracle_by_key.setdefault((entry.smell_id, entry.item_name), []).append(entry)

    matched_findings: set[int] = set()
    for key, entries in oracle_by_key.items():
        candidates = sorted(
            findings_by_key.get(key, []), key=lambda f: (f.line, f.span.start)
        )
        for entry in sorted(entries, key=lambda e: e.line):
            for f in candidates:
                if id(f) in matched_findings:
                    continue
                if abs(f.line - entry.line) > LINE_TOLERANCE:
                    continue
                if (
                    entry.evidence_hint is not None
                    and entry.evidence_hint not in _evidence_text(f)
                ):
                    continue
                matched_findings.add(id(f))
                report.matched_pairs.append((f, entry))
                break

    matched_entries = {id(e) for _, e in report.matched_pairs}
    for f in findings:
        t = tally(_category(f.smell_id))
        if id(f) in matched_findings:
            t.tp += 1
            report.totals.tp += 1
        else:
            t.fp += 1
            report.totals.fp += 1
    for entry in oracle:
        if id(entry) not in matched_entries:
            t = tally(_category(entry.smell_id))
            t.fn += 1
            report.totals.fn += 1
    return report


def _ratio(value: Optional[float]) -> str:
    return "N/A" if value is None else f"{value:.3f}"


def render_table(report: EvalReport) -> str:
    """Aligned text table: Category | Precision | Recall | #indicated | #correct."""
    rows: list[tuple[str, Tally]] = []
    for (characteristic, scope), tally in sorted(
        report.per_category.items(),
        key=lambda kv: (kv[0][0].value, kv[0][1].value),
    ):
        rows.append((f"{characteristic.title}/{scope.title}", tally))
    rows.append(("Total", report.totals))

    headers = ("Category", "Precision", "Recall", "#indicated", "#correct")
    table = [headers]
    for name, t in rows:
        table.append(
            (
                name,
                _ratio(t.precision),
                _ratio(t.recall),
                str(t.tp + t.fp),
                str(t.tp + t.fn),
            )
        )
    widths = [max(len(row[i]) for row in table) for i in range(len(headers))]
    lines = []
    for row in table:
        lines.append(
            "  ".join(
                cell.ljust(widths[i]) if i == 0 else cell.rjust(widths[i])
                for i, cell in enumerate(row)
            )
        )
    lines.insert(1, "-" * len(lines[0]))
    return "\n".join(lines) + "\n"
