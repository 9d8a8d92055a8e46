"""Numeric metrics and boolean predicates over a parsed document.

The numeric metrics (NOP, NOW, NOEFR, NOAFR, LOS, NOV, NOM, NON) count
features of single sentences or flow groups; the 22 predicates check
structural properties of flows and sections. All are pure functions;
the output names are the bit-exact strings the report format uses.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Callable

from .model import (
    BranchFlow,
    Flow,
    PosTag,
    SectionKind,
    Sentence,
    SourceSpan,
    UseCaseDescription,
)

RETURN_PHRASES = [
    re.compile(
        r"\breturns?\s+to\s+(?:step\s+\d+|(?:the\s+)?basic\s+flow|end)\b",
        re.IGNORECASE,
    ),
    re.compile(r"\buse\s+case\s+ends\b", re.IGNORECASE),
]

_STEP_NAME_RE = re.compile(r"\bstep\s+(\d+)\b", re.IGNORECASE)


@dataclass(frozen=True)
class MetricValue:
    metric: str
    target: SourceSpan
    value: int

    def __post_init__(self) -> None:
        if self.value < 0:
            raise ValueError("metric values are counts; got a negative")


@dataclass(frozen=True)
class PredicateResult:
    predicate: str
    holds: bool
    witnesses: tuple[SourceSpan, ...] = ()


# --- numeric metrics ------------------------------------------------------


def NOP(s: Sentence) -> int:
    """Number of pronouns in a tagged sentence."""
    return sum(1 for t in s.tokens if t.pos is PosTag.PRONOUN)


def NOV(s: Sentence) -> int:
    """Number of verbs in a tagged sentence."""
    return sum(1 for t in s.tokens if t.pos is PosTag.VERB)


def NOM(s: Sentence) -> int:
    """Number of modifiers in a tagged sentence."""
    return sum(1 for t in s.tokens if t.pos is PosTag.MODIFIER)


def NOW(s: Sentence, word: str) -> int:
    """Number of occurrences of the given word, any part of speech."""
    w = word.lower()
    return sum(1 for t in s.tokens if t.surface.lower() == w)


def NON(s: Sentence, noun: str) -> int:
    """Number of noun-tagged occurrences of the given word."""
    w = noun.lower()
    return sum(
        1 for t in s.tokens if t.pos is PosTag.NOUN and t.surface.lower() == w
    )


def LOS(s: Sentence) -> int:
    """Length of a sentence in characters (Unicode scalar values)."""
    return len(s.text.strip())


def normalize_reason(text: str) -> str:
    """Canonical key for branch conditions: casefolded, whitespace
    collapsed, leading if/when and trailing punctuation stripped."""
    t = re.sub(r"\s+", " ", text.casefold().strip())
    t = re.sub(r"^(if|when)\s+", "", t)
    return t.rstrip(".!?,;: ")


def reason_groups(flows: list[BranchFlow]) -> list[tuple[str, list[BranchFlow]]]:
    """Group flows by normalized condition; flows without one are skipped."""
    groups: dict[str, list[BranchFlow]] = {}
    for flow in flows:
        if flow.condition is None:
            continue
        groups.setdefault(normalize_reason(flow.condition.text), []).append(flow)
    return list(groups.items())


def NOEFR(d: UseCaseDescription) -> list[tuple[str, int]]:
    """Sizes of exception-flow groups sharing one branch reason."""
    return [(k, len(fs)) for k, fs in reason_groups(d.exception_flows)]


def NOAFR(d: UseCaseDescription) -> list[tuple[str, int]]:
    """Sizes of alternate-flow groups sharing one branch reason."""
    return [(k, len(fs)) for k, fs in reason_groups(d.alternate_flows)]


# --- per-flow structural checks (shared by predicates and the engine) ----


def flow_numbered(flow) -> list[SourceSpan]:
    """Spans of unnumbered steps (empty when all are numbered)."""
    return [s.span for s in flow.steps if s.number is None]


def flow_ordered(flow) -> list[SourceSpan]:
    """Span of the first step breaking the strict +1 ordering, if any."""
    numbers = [(s.number, s.span) for s in flow.steps if s.number is not None]
    for (a, _), (b, span) in zip(numbers, numbers[1:]):
        if b != a + 1:
            return [span]
    return []


def flow_starts_with_1(flow) -> list[SourceSpan]:
    if not flow.steps:
        return []
    first = flow.steps[0]
    return [] if first.number == 1 else [first.span]


def branch_origin_described(flow: BranchFlow) -> bool:
    if flow.origin is not None:
        return True
    return flow.condition is not None and bool(
        _STEP_NAME_RE.search(flow.condition.text)
    )


def branch_return_exists(flow: BranchFlow, patterns=None) -> bool:
    if flow.return_to is not None:
        return True
    pats = patterns or RETURN_PHRASES
    for step in flow.steps:
        for s in step.sentences:
            if any(p.search(s.text) for p in pats):
                return True
    return False


def branch_reason_exists(flow: BranchFlow) -> bool:
    return flow.condition is not None


# --- the 22 predicates ----------------------------------------------------


def _target_flows(d: UseCaseDescription, kind: SectionKind) -> list:
    if kind is SectionKind.BASIC_FLOW:
        return [d.basic_flow] if d.basic_flow is not None else []
    return d.branch_flows(kind)


def _numbered(d, kind, name) -> PredicateResult:
    if not d.section_present(kind):
        return PredicateResult(name, True)
    witnesses = [w for f in _target_flows(d, kind) for w in flow_numbered(f)]
    return PredicateResult(name, not witnesses, tuple(witnesses))


def _ordered(d, kind, name) -> PredicateResult:
    if not d.section_present(kind):
        return PredicateResult(name, True)
    witnesses = [w for f in _target_flows(d, kind) for w in flow_ordered(f)]
    return PredicateResult(name, not witnesses, tuple(witnesses))


def _starts_with_1(d, kind, name) -> PredicateResult:
    if not d.section_present(kind):
        return PredicateResult(name, True)
    witnesses = [w for f in _target_flows(d, kind) for w in flow_starts_with_1(f)]
    return PredicateResult(name, not witnesses, tuple(witnesses))


def _origin_described(d, kind, name) -> PredicateResult:
    if not d.section_present(kind):
        return PredicateResult(name, True)
    witnesses = [
        f.span for f in d.branch_flows(kind) if not branch_origin_described(f)
    ]
    return PredicateResult(name, not witnesses, tuple(witnesses))


def _section_exists(d, kind, name) -> PredicateResult:
    return PredicateResult(name, d.section_present(kind))


def _return_exists(d, kind, name) -> PredicateResult:
    if not d.section_present(kind):
        return PredicateResult(name, True)
    witnesses = [
        f.span for f in d.branch_flows(kind) if not branch_return_exists(f)
    ]
    return PredicateResult(name, not witnesses, tuple(witnesses))


def _reason_exists(d, kind, name) -> PredicateResult:
    if not d.section_present(kind):
        return PredicateResult(name, True)
    witnesses = [
        f.span for f in d.branch_flows(kind) if not branch_reason_exists(f)
    ]
    return PredicateResult(name, not witnesses, tuple(witnesses))


_BASIC = SectionKind.BASIC_FLOW
_ALT = SectionKind.ALTERNATE_FLOWS
_EXC = SectionKind.EXCEPTION_FLOWS

_PREDICATE_SPECS: list[tuple[str, Callable, SectionKind]] = [
    ("BasicFlowNumbered?", _numbered, _BASIC),
    ("ExceptionFlowsNumbered?", _numbered, _EXC),
    ("AlternateFlowsNumbered?", _numbered, _ALT),
    ("BasicFlowOrdered?", _ordered, _BASIC),
    ("ExceptionFlowsOrdered?", _ordered, _EXC),
    ("AlternateFlowsOrdered?", _ordered, _ALT),
    ("BasicFlowStartWith1?", _starts_with_1, _BASIC),
    ("ExceptionFlowsStartWith1?", _starts_with_1, _EXC),
    ("AlternateFlowsStartWith1?", _starts_with_1, _ALT),
    ("ExceptionFlowsOriginDescribed?", _origin_described, _EXC),
    ("AlternateFlowsOriginDescribed?", _origin_described, _ALT),
    ("ActorSectionExist?", _section_exists, SectionKind.ACTORS),
    ("ExceptionFlowsSectionExist?", _section_exists, _EXC),
    ("AlternateFlowsSectionExist?", _section_exists, _ALT),
    ("PreconditionsSectionExist?", _section_exists, SectionKind.PRECONDITIONS),
    ("PostconditionsSectionExist?", _section_exists, SectionKind.POSTCONDITIONS),
    ("OverviewSectionExist?", _section_exists, SectionKind.OVERVIEW),
    ("NameSectionExist?", _section_exists, SectionKind.NAME),
    ("ExceptionFlowsReturnExist?", _return_exists, _EXC),
    ("AlternateFlowsReturnExist?", _return_exists, _ALT),
    ("ExceptionFlowsReasonExist?", _reason_exists, _EXC),
    ("AlternateFlowsReasonExist?", _reason_exists, _ALT),
]

PREDICATES: dict[str, Callable[[UseCaseDescription], PredicateResult]] = {
    name: (lambda d, fn=fn, kind=kind, name=name: fn(d, kind, name))
    for name, fn, kind in _PREDICATE_SPECS
}


def evaluate_predicate(name: str, d: UseCaseDescription) -> PredicateResult:
    return PREDICATES[name](d)
