"""Core relation schema, validation, and JSONL serialization.

A relation holds two argument spans (plus an optional signal span) anchored
into a context string by character offsets. Everything is an immutable value
object so corpora can be shared freely between pipeline stages.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field, replace
from enum import Enum
from pathlib import Path

from .textutil import Normalization, normalize_text, tokens_with_offsets

TRAIN, DEV, TEST = 0, 1, 2
UNASSIGNED = -1
NO_DIRECTION = -1

# On-disk field order for one relation per JSONL line.
JSONL_FIELDS = (
    "original_id",
    "dataset_id",
    "span1",
    "span2",
    "signal",
    "context",
    "idx",
    "label",
    "direction",
    "split",
)


class IssueCode(str, Enum):
    OFFSET_MISMATCH = "OFFSET_MISMATCH"
    EMPTY_SPAN = "EMPTY_SPAN"
    BAD_LABEL = "BAD_LABEL"
    BAD_DIRECTION = "BAD_DIRECTION"
    BAD_SPLIT = "BAD_SPLIT"
    DIRECTIONLESS_CAUSAL = "DIRECTIONLESS_CAUSAL"
    SPAN_INTERLEAVE = "SPAN_INTERLEAVE"
    OFFSET_OUT_OF_RANGE = "OFFSET_OUT_OF_RANGE"


class CrestError(Exception):
    """Base class for all toolkit errors."""


class CorpusFormatError(CrestError):
    """A corpus file line could not be parsed into a relation."""

    def __init__(self, message: str, line_no: int | None = None):
        if line_no is not None:
            message = f"line {line_no}: {message}"
        super().__init__(message)
        self.line_no = line_no


class CorpusValidationError(CrestError):
    """A relation was parsed but violates schema invariants."""

    def __init__(self, message: str, line_no: int | None, report: "ValidationReport"):
        codes = ", ".join(sorted({i.code.value for i in report.issues}))
        if line_no is not None:
            message = f"line {line_no}: {message} ({codes})"
        else:
            message = f"{message} ({codes})"
        super().__init__(message)
        self.line_no = line_no
        self.report = report


class DuplicateIdError(CrestError):
    """Two relations share one (dataset_id, original_id) pair."""


@dataclass(frozen=True)
class TokenSpan:
    """Tokens of one span plus their [start, end) character offsets."""

    tokens: tuple[str, ...] = ()
    offsets: tuple[tuple[int, int], ...] = ()

    def __bool__(self) -> bool:
        return bool(self.tokens)

    @property
    def extent(self) -> tuple[int, int]:
        """Character range from the first token start to the last token end."""
        return self.offsets[0][0], self.offsets[-1][1]

    @classmethod
    def empty(cls) -> "TokenSpan":
        return cls()

    @classmethod
    def from_extent(cls, context: str, start: int, end: int) -> "TokenSpan":
        """Whitespace-tokenize context[start:end] into a span."""
        tokens, offsets = tokens_with_offsets(context, start, end)
        return cls(tokens, offsets)


@dataclass(frozen=True)
class CrestRelation:
    original_id: str
    dataset_id: int
    span1: TokenSpan
    span2: TokenSpan
    signal: TokenSpan
    context: str
    label: int
    direction: int = NO_DIRECTION
    split: int = UNASSIGNED


@dataclass(frozen=True)
class Issue:
    code: IssueCode
    where: str
    detail: str = ""


@dataclass(frozen=True)
class ValidationReport:
    issues: tuple[Issue, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.issues

    @property
    def codes(self) -> tuple[IssueCode, ...]:
        return tuple(issue.code for issue in self.issues)


@dataclass(frozen=True)
class Corpus:
    relations: tuple[CrestRelation, ...] = ()
    source_name: str = ""
    normalization_policy: Normalization = Normalization.NFC_COLLAPSE_WS
    validation_ledger: tuple[tuple[int, IssueCode], ...] = ()


def _check_span(
    name: str,
    span: TokenSpan,
    text: str,
    issues: list[Issue],
    require_nonempty: bool,
) -> None:
    if not span.tokens and require_nonempty:
        issues.append(Issue(IssueCode.EMPTY_SPAN, name, "span has no tokens"))
    if len(span.tokens) != len(span.offsets):
        issues.append(
            Issue(
                IssueCode.OFFSET_MISMATCH,
                name,
                f"{len(span.tokens)} tokens but {len(span.offsets)} offset pairs",
            )
        )
    for k, (token, (start, end)) in enumerate(zip(span.tokens, span.offsets)):
        if not (0 <= start < end <= len(text)):
            issues.append(
                Issue(
                    IssueCode.OFFSET_OUT_OF_RANGE,
                    f"{name}[{k}]",
                    f"({start}, {end}) not within [0, {len(text)})",
                )
            )
        elif text[start:end] != token:
            issues.append(
                Issue(
                    IssueCode.OFFSET_MISMATCH,
                    f"{name}[{k}]",
                    f"context slice {text[start:end]!r} != token {token!r}",
                )
            )
    for k in range(1, len(span.offsets)):
        if span.offsets[k][0] < span.offsets[k - 1][1]:
            issues.append(
                Issue(
                    IssueCode.SPAN_INTERLEAVE,
                    name,
                    "token offsets overlap or run backwards within the span",
                )
            )
            break


def validate_relation(
    rel: CrestRelation, context_policy: Normalization = Normalization.NONE
) -> ValidationReport:
    """Check every relation invariant against the (policy-normalized) context.

    Adapters store contexts already in normal form, so normalization here is
    a fixed point for toolkit-produced corpora.
    """
    text = normalize_text(rel.context, context_policy)
    issues: list[Issue] = []
    _check_span("span1", rel.span1, text, issues, require_nonempty=True)
    _check_span("span2", rel.span2, text, issues, require_nonempty=True)
    _check_span("signal", rel.signal, text, issues, require_nonempty=False)

    if rel.label not in (0, 1):
        issues.append(Issue(IssueCode.BAD_LABEL, "label", f"label {rel.label} not in {{0, 1}}"))
    if rel.direction not in (-1, 0, 1):
        issues.append(
            Issue(IssueCode.BAD_DIRECTION, "direction", f"direction {rel.direction} not in {{-1, 0, 1}}")
        )
    if rel.split not in (-1, 0, 1, 2):
        issues.append(Issue(IssueCode.BAD_SPLIT, "split", f"split {rel.split} not in {{-1, 0, 1, 2}}"))
    if rel.label == 1 and rel.direction == NO_DIRECTION:
        issues.append(
            Issue(IssueCode.DIRECTIONLESS_CAUSAL, "direction", "causal relation carries no direction")
        )

    if rel.span1.offsets and rel.span2.offsets:
        s1, e1 = rel.span1.extent
        s2, e2 = rel.span2.extent
        if not (e1 <= s2 or e2 <= s1):
            issues.append(
                Issue(IssueCode.SPAN_INTERLEAVE, "span1/span2", "span extents are not disjoint")
            )
    return ValidationReport(tuple(issues))


def validate_corpus(corpus: Corpus) -> Corpus:
    """Return a copy with the validation ledger rebuilt."""
    ledger: list[tuple[int, IssueCode]] = []
    for i, rel in enumerate(corpus.relations):
        report = validate_relation(rel, corpus.normalization_policy)
        ledger.extend((i, code) for code in report.codes)
    return replace(corpus, validation_ledger=tuple(ledger))


def flip_direction(rel: CrestRelation) -> CrestRelation:
    """Swap which span is the cause; only meaningful for causal relations."""
    if rel.direction not in (0, 1):
        raise ValueError(f"relation {rel.original_id!r} has no direction to flip")
    return replace(rel, direction=1 - rel.direction)


def relation_to_dict(rel: CrestRelation) -> dict:
    return {
        "original_id": rel.original_id,
        "dataset_id": rel.dataset_id,
        "span1": list(rel.span1.tokens),
        "span2": list(rel.span2.tokens),
        "signal": list(rel.signal.tokens),
        "context": rel.context,
        "idx": {
            "span1": [list(p) for p in rel.span1.offsets],
            "span2": [list(p) for p in rel.span2.offsets],
            "signal": [list(p) for p in rel.signal.offsets],
        },
        "label": rel.label,
        "direction": rel.direction,
        "split": rel.split,
    }


def _span_from_dict(tokens, pairs, line_no: int, name: str) -> TokenSpan:
    if not isinstance(tokens, list) or not all(isinstance(t, str) for t in tokens):
        raise CorpusFormatError(f"{name} must be a list of strings", line_no)
    if not isinstance(pairs, list):
        raise CorpusFormatError(f"idx.{name} must be a list of [start, end] pairs", line_no)
    offsets = []
    for p in pairs:
        if (
            not isinstance(p, list)
            or len(p) != 2
            or not all(isinstance(v, int) and not isinstance(v, bool) for v in p)
        ):
            raise CorpusFormatError(f"idx.{name} must be a list of [start, end] pairs", line_no)
        offsets.append((p[0], p[1]))
    return TokenSpan(tuple(tokens), tuple(offsets))


def relation_from_dict(obj: dict, line_no: int | None = None) -> CrestRelation:
    if not isinstance(obj, dict):
        raise CorpusFormatError("relation line is not a JSON object", line_no)
    missing = [f for f in JSONL_FIELDS if f not in obj]
    if missing:
        raise CorpusFormatError(f"missing fields: {', '.join(missing)}", line_no)
    idx = obj["idx"]
    if not isinstance(idx, dict) or set(idx) != {"span1", "span2", "signal"}:
        raise CorpusFormatError("idx must hold span1, span2 and signal offset lists", line_no)
    if not isinstance(obj["original_id"], str):
        raise CorpusFormatError("original_id must be a string", line_no)
    if not isinstance(obj["context"], str):
        raise CorpusFormatError("context must be a string", line_no)
    for name in ("dataset_id", "label", "direction", "split"):
        if not isinstance(obj[name], int) or isinstance(obj[name], bool):
            raise CorpusFormatError(f"{name} must be an integer", line_no)
    return CrestRelation(
        original_id=obj["original_id"],
        dataset_id=obj["dataset_id"],
        span1=_span_from_dict(obj["span1"], idx["span1"], line_no, "span1"),
        span2=_span_from_dict(obj["span2"], idx["span2"], line_no, "span2"),
        signal=_span_from_dict(obj["signal"], idx["signal"], line_no, "signal"),
        context=obj["context"],
        label=obj["label"],
        direction=obj["direction"],
        split=obj["split"],
    )


def _check_unique_ids(relations, line_of=None) -> None:
    seen: dict[tuple[int, str], int] = {}
    for i, rel in enumerate(relations):
        key = (rel.dataset_id, rel.original_id)
        if key in seen:
            where = f"lines {line_of(seen[key])} and {line_of(i)}" if line_of else f"indices {seen[key]} and {i}"
            raise DuplicateIdError(
                f"duplicate (dataset_id, original_id) = ({key[0]}, {key[1]!r}) at {where}"
            )
        seen[key] = i


def write_corpus(corpus: Corpus, path: str | Path) -> None:
    """Serialize a corpus as JSONL (UTF-8, LF). Every relation must validate."""
    _check_unique_ids(corpus.relations)
    lines = []
    for i, rel in enumerate(corpus.relations):
        report = validate_relation(rel, corpus.normalization_policy)
        if not report.ok:
            raise CorpusValidationError(
                f"relation {rel.original_id!r} fails validation", i + 1, report
            )
        lines.append(json.dumps(relation_to_dict(rel), ensure_ascii=False))
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        for line in lines:
            fh.write(line + "\n")


def read_corpus(
    path: str | Path,
    source_name: str = "",
    normalization_policy: Normalization = Normalization.NFC_COLLAPSE_WS,
    on_invalid: str = "raise",
) -> Corpus:
    """Read a JSONL corpus, validating every relation.

    on_invalid="raise" fails on the first invalid record; "ledger" keeps
    reading and collects issues into the corpus validation ledger.
    """
    if on_invalid not in ("raise", "ledger"):
        raise ValueError(f"on_invalid must be 'raise' or 'ledger', got {on_invalid!r}")
    relations: list[CrestRelation] = []
    ledger: list[tuple[int, IssueCode]] = []
    with open(path, encoding="utf-8") as fh:
        for line_no, line in enumerate(fh, start=1):
            if not line.strip():
                continue
            try:
                obj = json.loads(line)
            except json.JSONDecodeError as exc:
                raise CorpusFormatError(f"not valid JSON: {exc.msg}", line_no) from exc
            rel = relation_from_dict(obj, line_no)
            report = validate_relation(rel, normalization_policy)
            if not report.ok:
                if on_invalid == "raise":
                    raise CorpusValidationError(
                        f"relation {rel.original_id!r} fails validation", line_no, report
                    )
                ledger.extend((len(relations), code) for code in report.codes)
            relations.append(rel)
    _check_unique_ids(relations)
    return Corpus(
        relations=tuple(relations),
        source_name=source_name,
        normalization_policy=normalization_policy,
        validation_ledger=tuple(ledger),
    )
