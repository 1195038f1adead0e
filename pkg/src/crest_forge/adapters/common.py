"""Construction helpers shared by the standoff-style adapters."""

from __future__ import annotations

from pathlib import Path
from typing import Iterable, Sequence

from ..model import TokenSpan
from ..textutil import (
    Normalization,
    collapse_ws_with_map,
    map_range,
    nfc,
    sentence_window,
    tokens_with_offsets,
)

Range = tuple[int, int]


def expand_files(paths: Sequence[str | Path], suffix: str) -> list[Path]:
    """Resolve a mix of files and directories into a deterministic file list."""
    files: list[Path] = []
    for p in paths:
        p = Path(p)
        if p.is_dir():
            files.extend(sorted(p.rglob(f"*{suffix}")))
        else:
            files.append(p)
    return files


def load_text(path: Path, policy: Normalization) -> str:
    raw = path.read_text(encoding="utf-8")
    return nfc(raw) if policy is not Normalization.NONE else raw


def cut_context(
    doc: str, ranges: Iterable[Range], policy: Normalization
) -> tuple[str, list[Range]] | None:
    """Cut the sentence-aligned window covering all ranges and remap them.

    Returns (context, ranges relative to the context) or None when a range
    cannot be carried through normalization.
    """
    ranges = list(ranges)
    lo = min(s for s, _ in ranges)
    hi = max(e for _, e in ranges)
    if lo < 0 or hi > len(doc) or lo >= hi:
        return None
    ws, we = sentence_window(doc, lo, hi)
    window = doc[ws:we]
    shifted = [(s - ws, e - ws) for s, e in ranges]
    if policy is Normalization.NONE:
        return window, shifted
    collapsed, pos = collapse_ws_with_map(window)
    mapped = []
    for s, e in shifted:
        m = map_range(pos, s, e)
        if m is None:
            return None
        mapped.append(m)
    return collapsed, mapped


def token_span(context: str, ranges: Iterable[Range]) -> TokenSpan:
    """Build a span by whitespace-tokenizing each range of the context."""
    tokens: list[str] = []
    offsets: list[Range] = []
    for s, e in sorted(ranges):
        t, o = tokens_with_offsets(context, s, e)
        tokens.extend(t)
        offsets.extend(o)
    return TokenSpan(tuple(tokens), tuple(offsets))


def cause_effect_parts(
    doc: str,
    cause_ranges: Sequence[Range],
    effect_ranges: Sequence[Range],
    signal_ranges: Sequence[Range],
    policy: Normalization,
) -> tuple[str, TokenSpan, TokenSpan, TokenSpan, int] | None:
    """Assemble (context, span1, span2, signal, direction) for one relation.

    span1 is whichever argument appears first in the text; direction is 0
    when that argument is the cause, else 1. Returns None when the ranges
    cannot form two disjoint non-empty spans.
    """
    if not cause_ranges or not effect_ranges:
        return None
    cut = cut_context(doc, [*cause_ranges, *effect_ranges, *signal_ranges], policy)
    if cut is None:
        return None
    context, mapped = cut
    n_cause = len(cause_ranges)
    n_effect = len(effect_ranges)
    cause = token_span(context, mapped[:n_cause])
    effect = token_span(context, mapped[n_cause : n_cause + n_effect])
    signal = token_span(context, mapped[n_cause + n_effect :])
    if not cause.tokens or not effect.tokens:
        return None
    (cs, ce), (es, ee) = cause.extent, effect.extent
    if not (ce <= es or ee <= cs):
        return None
    if cs < es:
        return context, cause, effect, signal, 0
    return context, effect, cause, signal, 1
