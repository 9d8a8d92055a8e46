"""Readers for the line-oriented plain-text format and the canonical
JSON interchange format, plus the matching serializer.

The plain-text grammar is deliberately small: colon-terminated section
headers, numbered steps inside flow sections, and A<n>/E<n> branch
headers whose first If/When line is the branch condition. See the
bundled fixtures for complete examples.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from enum import Enum
from typing import Optional

from .model import (
    END,
    ActorDecl,
    BranchFlow,
    EndMarker,
    Flow,
    SectionKind,
    Sentence,
    SourceRef,
    SourceSpan,
    Step,
    StepRef,
    UseCaseDescription,
)


class Severity(Enum):
    WARNING = "warning"
    ERROR = "error"


@dataclass(frozen=True)
class ParseDiagnostic:
    severity: Severity
    message: str
    line: int


_HEADERS = {
    "name": SectionKind.NAME,
    "overview": SectionKind.OVERVIEW,
    "description": SectionKind.OVERVIEW,
    "actors": SectionKind.ACTORS,
    "preconditions": SectionKind.PRECONDITIONS,
    "postconditions": SectionKind.POSTCONDITIONS,
    "basic flow": SectionKind.BASIC_FLOW,
    "alternate flows": SectionKind.ALTERNATE_FLOWS,
    "exception flows": SectionKind.EXCEPTION_FLOWS,
}

_HEADER_RE = re.compile(
    r"^(name|overview|description|actors|preconditions|postconditions|"
    r"basic flow|alternate flows|exception flows)\s*:\s*(.*)$",
    re.IGNORECASE,
)
_STEP_RE = re.compile(r"^(\d+)[.)]\s+(.*)$")
_BRANCH_STEP_RE = re.compile(r"^([AE]\d+\.\d+)[.)]?\s+(.*)$")
_BRANCH_HEADER_RE = re.compile(r"^([AE])(\d+)(?!\.\d)\b[\s.:\-]*(.*)$")
_CONDITION_RE = re.compile(r"^(if|when)\b", re.IGNORECASE)
_AT_STEP_RE = re.compile(r"\bat step\s+(\d+)\b", re.IGNORECASE)
_ORIGIN_RE = re.compile(r"^origin\s*:\s*(?:step\s+)?(\d+)\s*$", re.IGNORECASE)
_RETURN_RE = re.compile(
    r"\breturns?\s+to\s+(?:step\s+(\d+)|(?:the\s+)?basic\s+flow|(end))\b"
    r"|\buse\s+case\s+ends\b",
    re.IGNORECASE,
)

# A sentence terminator splits unless it sits in a digit context, as in
# step labels ("A1.1") or trailing numerals ("step 2.").
_SENT_SPLIT_RE = re.compile(r"(?<!\d)[.!?]+(?!\d)|[.!?]+(?=\s|$)(?!\s*\d)|\n")


def split_sentences(block: str) -> list[tuple[str, int]]:
    """Split a text block into (sentence, char offset) pairs."""
    out: list[tuple[str, int]] = []
    pos = 0
    for m in _SENT_SPLIT_RE.finditer(block):
        piece = block[pos : m.end()]
        if piece.strip():
            lead = len(piece) - len(piece.lstrip())
            out.append((piece.strip(), pos + lead))
        pos = m.end()
    tail = block[pos:]
    if tail.strip():
        lead = len(tail) - len(tail.lstrip())
        out.append((tail.strip(), pos + lead))
    return out


def _trailing_number(label: str) -> Optional[int]:
    m = re.search(r"(\d+)$", label)
    return int(m.group(1)) if m else None


class _Lines:
    """Source lines with byte offsets; offsets index the UTF-8 encoding."""

    def __init__(self, source: str):
        self.lines: list[str] = source.split("\n")
        self.offsets: list[int] = []
        off = 0
        for ln in self.lines:
            self.offsets.append(off)
            off += len(ln.encode("utf-8")) + 1

    def span(self, lineno: int, text: str, col: int = 0) -> SourceSpan:
        start = self.offsets[lineno - 1] + col
        return SourceSpan(start, start + len(text.encode("utf-8")), lineno)


def _sentences_of(lines: _Lines, lineno: int, text: str, col: int) -> list[Sentence]:
    result = []
    for sent, off in split_sentences(text):
        span = lines.span(lineno, sent, col + off)
        result.append(Sentence(text=sent, line=lineno, span=span))
    return result


def parse_text(
    source: str, name: SourceRef = SourceRef("<memory>")
) -> tuple[Optional[UseCaseDescription], list[ParseDiagnostic]]:
    diags: list[ParseDiagnostic] = []
    lines = _Lines(source)
    doc = UseCaseDescription(source=name)
    current: Optional[SectionKind] = None
    current_branch: Optional[BranchFlow] = None
    text_accum: dict[SectionKind, list[str]] = {}

    def warn(msg: str, lineno: int) -> None:
        diags.append(ParseDiagnostic(Severity.WARNING, msg, lineno))

    for lineno, raw in enumerate(lines.lines, 1):
        line = raw.rstrip("\r")
        stripped = line.strip()
        if not stripped:
            continue
        col = len(line) - len(line.lstrip())

        m = _HEADER_RE.match(stripped)
        if m:
            kind = _HEADERS[m.group(1).lower()]
            if kind in doc.section_order:
                warn(f"duplicate section header '{kind.title}'", lineno)
            else:
                doc.section_order.append(kind)
                doc.section_header_lines[kind] = lineno
            current = kind
            current_branch = None
            rest = m.group(2).strip()
            if kind in (SectionKind.NAME, SectionKind.OVERVIEW):
                text_accum.setdefault(kind, [])
                if rest:
                    text_accum[kind].append(rest)
            elif rest:
                warn(f"content after '{kind.title}:' header ignored", lineno)
            continue

        if current is None:
            warn(f"line outside any section: {stripped[:40]!r}", lineno)
            continue

        if current in (SectionKind.NAME, SectionKind.OVERVIEW):
            text_accum[current].append(stripped)
        elif current is SectionKind.ACTORS:
            if doc.actors is None:
                doc.actors = []
            for sep in (" - ", ": "):
                if sep in stripped:
                    actor_name, desc = stripped.split(sep, 1)
                    doc.actors.append(ActorDecl(actor_name.strip(), desc.strip()))
                    break
            else:
                doc.actors.append(ActorDecl(stripped))
        elif current in (SectionKind.PRECONDITIONS, SectionKind.POSTCONDITIONS):
            sents = _sentences_of(lines, lineno, stripped, col)
            if current is SectionKind.PRECONDITIONS:
                doc.preconditions = (doc.preconditions or []) + sents
            else:
                doc.postconditions = (doc.postconditions or []) + sents
        elif current is SectionKind.BASIC_FLOW:
            if doc.basic_flow is None:
                doc.basic_flow = Flow(steps=[])
            sm = _STEP_RE.match(stripped)
            if sm:
                label, text = sm.group(1), sm.group(2)
                text_col = col + (len(stripped) - len(text))
            else:
                label, text, text_col = None, stripped, col
            doc.basic_flow.steps.append(
                Step(
                    label=label,
                    number=_trailing_number(label) if label else None,
                    sentences=_sentences_of(lines, lineno, text, text_col),
                    span=lines.span(lineno, stripped, col),
                )
            )
        else:  # branch flow sections
            flows = doc.branch_flows(current)
            bm = _BRANCH_STEP_RE.match(stripped)
            hm = None if bm else _BRANCH_HEADER_RE.match(stripped)
            if hm:
                flow_id = hm.group(1) + hm.group(2)
                if any(f.id == flow_id for f in flows):
                    warn(f"duplicate flow id '{flow_id}'", lineno)
                current_branch = BranchFlow(
                    id=flow_id, span=lines.span(lineno, stripped, col)
                )
                flows.append(current_branch)
                rest = hm.group(3).strip()
                if rest:
                    lead = len(hm.group(3)) - len(hm.group(3).lstrip())
                    rest_col = col + hm.start(3) + lead
                    _branch_content(
                        lines, lineno, rest, rest_col, current_branch, warn
                    )
                continue
            if current_branch is None:
                warn(f"line before any flow header: {stripped[:40]!r}", lineno)
                continue
            if bm:
                label, text = bm.group(1), bm.group(2)
                text_col = col + (len(stripped) - len(text))
                step = Step(
                    label=label,
                    number=_trailing_number(label),
                    sentences=_sentences_of(lines, lineno, text, text_col),
                    span=lines.span(lineno, stripped, col),
                )
                current_branch.steps.append(step)
                _note_return(current_branch, text)
            else:
                _branch_content(lines, lineno, stripped, col, current_branch, warn)

    doc.name = " ".join(text_accum.get(SectionKind.NAME, [])) or None
    doc.overview = " ".join(text_accum.get(SectionKind.OVERVIEW, [])) or None

    if not doc.section_order:
        diags.append(ParseDiagnostic(Severity.ERROR, "no sections found", 0))
        return None, diags
    if doc.basic_flow is None or not doc.basic_flow.steps:
        warn("no basic flow section", 0)
    return doc, diags


def _note_return(flow: BranchFlow, text: str) -> None:
    m = _RETURN_RE.search(text)
    if m is None:
        return
    if m.group(1):
        flow.return_to = StepRef(SectionKind.BASIC_FLOW, m.group(1))
    else:
        flow.return_to = END


def _branch_content(lines, lineno, text, col, flow: BranchFlow, warn) -> None:
    """Handle an unlabeled line in a branch flow body (or header rest)."""
    om = _ORIGIN_RE.match(text)
    if om:
        flow.origin = StepRef(SectionKind.BASIC_FLOW, om.group(1))
        return
    if _CONDITION_RE.match(text) and flow.condition is None and not flow.steps:
        sents = _sentences_of(lines, lineno, text, col)
        flow.condition = sents[0]
        am = _AT_STEP_RE.search(text)
        if am:
            flow.origin = StepRef(SectionKind.BASIC_FLOW, am.group(1))
        return
    rm = _RETURN_RE.search(text)
    if rm is not None:
        _note_return(flow, text)
        if rm.start() == 0 and rm.end() >= len(text.rstrip(" .!?")):
            return  # the whole line is just the return marker
    # Plain unlabeled content becomes an unnumbered step.
    flow.steps.append(
        Step(
            label=None,
            number=None,
            sentences=_sentences_of(lines, lineno, text, col),
            span=lines.span(lineno, text, col),
        )
    )


# --- canonical JSON -------------------------------------------------------


def serialize(doc: UseCaseDescription) -> str:
    """Render a document in the canonical JSON interchange format."""
    obj: dict = {}
    if doc.name is not None:
        obj["name"] = doc.name
    if doc.overview is not None:
        obj["overview"] = doc.overview
    if doc.actors is not None:
        obj["actors"] = [
            {"name": a.name, **({"description": a.description} if a.description else {})}
            for a in doc.actors
        ]
    if doc.preconditions is not None:
        obj["preconditions"] = [s.text for s in doc.preconditions]
    if doc.postconditions is not None:
        obj["postconditions"] = [s.text for s in doc.postconditions]
    if doc.basic_flow is not None:
        obj["basic_flow"] = [_step_obj(s) for s in doc.basic_flow.steps]
    if doc.alternate_flows:
        obj["alternate_flows"] = [_flow_obj(f) for f in doc.alternate_flows]
    if doc.exception_flows:
        obj["exception_flows"] = [_flow_obj(f) for f in doc.exception_flows]
    return json.dumps(obj, indent=2, ensure_ascii=False) + "\n"


def _step_obj(step: Step) -> dict:
    obj: dict = {}
    if step.label is not None:
        obj["label"] = step.label
    obj["text"] = " ".join(s.text for s in step.sentences)
    return obj


def _flow_obj(flow: BranchFlow) -> dict:
    obj: dict = {"id": flow.id}
    if flow.condition is not None:
        obj["condition"] = flow.condition.text
    if flow.origin is not None:
        obj["origin"] = flow.origin.label
    if flow.return_to is not None:
        obj["return_to"] = (
            "end" if isinstance(flow.return_to, EndMarker) else flow.return_to.label
        )
    obj["steps"] = [_step_obj(s) for s in flow.steps]
    return obj


class _SchemaError(Exception):
    pass


def _expect(cond: bool, msg: str) -> None:
    if not cond:
        raise _SchemaError(msg)


def parse_json(
    source: str, name: SourceRef = SourceRef("<memory>")
) -> tuple[Optional[UseCaseDescription], list[ParseDiagnostic]]:
    try:
        obj = json.loads(source)
    except json.JSONDecodeError as exc:
        return None, [ParseDiagnostic(Severity.ERROR, f"invalid JSON: {exc}", exc.lineno)]
    try:
        doc = _doc_from_obj(obj, name)
    except _SchemaError as exc:
        return None, [ParseDiagnostic(Severity.ERROR, str(exc), 0)]
    return doc, []


def _doc_from_obj(obj, name: SourceRef) -> UseCaseDescription:
    _expect(isinstance(obj, dict), "top level must be an object")
    doc = UseCaseDescription(source=name)
    if "name" in obj:
        _expect(isinstance(obj["name"], str), "'name' must be a string")
        doc.name = obj["name"]
        doc.section_order.append(SectionKind.NAME)
    if "overview" in obj:
        _expect(isinstance(obj["overview"], str), "'overview' must be a string")
        doc.overview = obj["overview"]
        doc.section_order.append(SectionKind.OVERVIEW)
    if "actors" in obj:
        _expect(isinstance(obj["actors"], list), "'actors' must be an array")
        doc.actors = []
        for a in obj["actors"]:
            _expect(
                isinstance(a, dict) and isinstance(a.get("name"), str),
                "actor entries must be objects with a 'name' string",
            )
            doc.actors.append(ActorDecl(a["name"], a.get("description")))
        doc.section_order.append(SectionKind.ACTORS)
    for key, kind in (
        ("preconditions", SectionKind.PRECONDITIONS),
        ("postconditions", SectionKind.POSTCONDITIONS),
    ):
        if key in obj:
            _expect(
                isinstance(obj[key], list)
                and all(isinstance(s, str) for s in obj[key]),
                f"'{key}' must be an array of strings",
            )
            sents = [
                Sentence(text=t) for raw in obj[key] for t, _ in split_sentences(raw)
            ]
            setattr(doc, key, sents)
            doc.section_order.append(kind)
    if "basic_flow" in obj:
        _expect(isinstance(obj["basic_flow"], list), "'basic_flow' must be an array")
        doc.basic_flow = Flow(steps=[_step_from_obj(s) for s in obj["basic_flow"]])
        doc.section_order.append(SectionKind.BASIC_FLOW)
    for key, kind in (
        ("alternate_flows", SectionKind.ALTERNATE_FLOWS),
        ("exception_flows", SectionKind.EXCEPTION_FLOWS),
    ):
        if key in obj:
            _expect(isinstance(obj[key], list), f"'{key}' must be an array")
            flows = [_branch_from_obj(f) for f in obj[key]]
            ids = [f.id for f in flows]
            _expect(
                len(ids) == len(set(ids)), f"duplicate flow id in '{key}'"
            )
            setattr(doc, key, flows)
            doc.section_order.append(kind)
    return doc


def _step_from_obj(obj) -> Step:
    _expect(
        isinstance(obj, dict) and isinstance(obj.get("text"), str),
        "steps must be objects with a 'text' string",
    )
    label = obj.get("label")
    _expect(
        label is None or isinstance(label, str), "step 'label' must be a string"
    )
    return Step(
        label=label,
        number=_trailing_number(label) if label else None,
        sentences=[Sentence(text=t) for t, _ in split_sentences(obj["text"])],
    )


def _branch_from_obj(obj) -> BranchFlow:
    _expect(
        isinstance(obj, dict) and isinstance(obj.get("id"), str) and obj["id"],
        "flows must be objects with a non-empty 'id' string",
    )
    flow = BranchFlow(id=obj["id"])
    if obj.get("condition") is not None:
        _expect(isinstance(obj["condition"], str), "'condition' must be a string")
        flow.condition = Sentence(text=obj["condition"].strip())
        am = _AT_STEP_RE.search(obj["condition"])
        if am:
            flow.origin = StepRef(SectionKind.BASIC_FLOW, am.group(1))
    if obj.get("origin") is not None:
        _expect(isinstance(obj["origin"], str), "'origin' must be a string")
        flow.origin = StepRef(SectionKind.BASIC_FLOW, obj["origin"])
    if obj.get("return_to") is not None:
        _expect(isinstance(obj["return_to"], str), "'return_to' must be a string")
        flow.return_to = (
            END
            if obj["return_to"] == "end"
            else StepRef(SectionKind.BASIC_FLOW, obj["return_to"])
        )
    _expect(isinstance(obj.get("steps"), list), "flows must carry a 'steps' array")
    flow.steps = [_step_from_obj(s) for s in obj["steps"]]
    for step in flow.steps:
        if flow.return_to is None:
            _note_return(flow, " ".join(s.text for s in step.sentences))
    return flow
