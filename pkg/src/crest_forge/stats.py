"""Descriptive statistics over a unified corpus."""

from __future__ import annotations

import json
from dataclasses import dataclass

from .model import DEV, NO_DIRECTION, TEST, TRAIN, UNASSIGNED, Corpus
from .textutil import has_boundary_between

_SPLIT_SLOTS = (TRAIN, DEV, TEST)


@dataclass(frozen=True)
class DatasetBreakdown:
    causal: int = 0
    non_causal: int = 0
    with_signal: int = 0
    split_counts: tuple[int, int, int] = (0, 0, 0)

    @property
    def total(self) -> int:
        return self.causal + self.non_causal


@dataclass(frozen=True)
class CorpusStats:
    total: int
    causal: int
    non_causal: int
    with_signal: int
    inter_sentence: int
    direction_counts: tuple[int, int]
    split_counts: tuple[int, int, int]
    unassigned: int
    span_token_hist: dict[int, int]
    per_dataset: dict[int, DatasetBreakdown]


def _spans_cross_sentence(rel) -> bool:
    extents = sorted((s.offsets[0][0], s.offsets[-1][1]) for s in (rel.span1, rel.span2) if s)
    if len(extents) < 2:
        return False
    return has_boundary_between(rel.context, extents[0][1], extents[1][0])


def compute_stats(corpus: Corpus) -> CorpusStats:
    hist: dict[int, int] = {}
    split_counts = {s: 0 for s in _SPLIT_SLOTS}
    direction = [0, 0]
    causal = non_causal = with_signal = inter = unassigned = 0
    per_dataset: dict[int, dict] = {}

    for rel in corpus.relations:
        d = per_dataset.setdefault(
            rel.dataset_id, {"causal": 0, "non_causal": 0, "with_signal": 0, "splits": [0, 0, 0]}
        )
        if rel.label == 1:
            causal += 1
            d["causal"] += 1
        else:
            non_causal += 1
            d["non_causal"] += 1
        if rel.signal:
            with_signal += 1
            d["with_signal"] += 1
        if rel.direction != NO_DIRECTION:
            direction[rel.direction] += 1
        if rel.split == UNASSIGNED:
            unassigned += 1
        else:
            split_counts[rel.split] += 1
            d["splits"][rel.split] += 1
        if _spans_cross_sentence(rel):
            inter += 1
        for span in (rel.span1, rel.span2):
            n = len(span.tokens)
            hist[n] = hist.get(n, 0) + 1

    return CorpusStats(
        total=len(corpus.relations),
        causal=causal,
        non_causal=non_causal,
        with_signal=with_signal,
        inter_sentence=inter,
        direction_counts=(direction[0], direction[1]),
        split_counts=tuple(split_counts[s] for s in _SPLIT_SLOTS),
        unassigned=unassigned,
        span_token_hist=dict(sorted(hist.items())),
        per_dataset={
            k: DatasetBreakdown(
                causal=v["causal"],
                non_causal=v["non_causal"],
                with_signal=v["with_signal"],
                split_counts=tuple(v["splits"]),
            )
            for k, v in sorted(per_dataset.items())
        },
    )


def stats_to_dict(stats: CorpusStats) -> dict:
    return {
        "total": stats.total,
        "causal": stats.causal,
        "non_causal": stats.non_causal,
        "with_signal": stats.with_signal,
        "inter_sentence": stats.inter_sentence,
        "direction_counts": list(stats.direction_counts),
        "split_counts": list(stats.split_counts),
        "unassigned": stats.unassigned,
        "span_token_hist": {str(k): v for k, v in stats.span_token_hist.items()},
        "per_dataset": {
            str(k): {
                "causal": d.causal,
                "non_causal": d.non_causal,
                "with_signal": d.with_signal,
                "split_counts": list(d.split_counts),
            }
            for k, d in stats.per_dataset.items()
        },
    }


def stats_from_dict(obj: dict) -> CorpusStats:
    return CorpusStats(
        total=obj["total"],
        causal=obj["causal"],
        non_causal=obj["non_causal"],
        with_signal=obj["with_signal"],
        inter_sentence=obj["inter_sentence"],
        direction_counts=tuple(obj["direction_counts"]),
        split_counts=tuple(obj["split_counts"]),
        unassigned=obj["unassigned"],
        span_token_hist={int(k): v for k, v in obj["span_token_hist"].items()},
        per_dataset={
            int(k): DatasetBreakdown(
                causal=d["causal"],
                non_causal=d["non_causal"],
                with_signal=d["with_signal"],
                split_counts=tuple(d["split_counts"]),
            )
            for k, d in obj["per_dataset"].items()
        },
    )


def render_report(stats: CorpusStats, fmt: str = "table-text") -> str:
    if fmt == "json":
        return json.dumps(stats_to_dict(stats), indent=2, sort_keys=True)
    if fmt != "table-text":
        raise ValueError(f"unknown report format {fmt!r}")

    header = ("dataset", "total", "causal", "non-causal", "signal", "train", "dev", "test")
    rows = [header]
    for dataset_id, d in stats.per_dataset.items():
        rows.append(
            (
                str(dataset_id),
                str(d.total),
                str(d.causal),
                str(d.non_causal),
                str(d.with_signal),
                *(str(c) for c in d.split_counts),
            )
        )
    rows.append(
        (
            "all",
            str(stats.total),
            str(stats.causal),
            str(stats.non_causal),
            str(stats.with_signal),
            *(str(c) for c in stats.split_counts),
        )
    )
    widths = [max(len(row[i]) for row in rows) for i in range(len(header))]
    lines = ["  ".join(cell.rjust(widths[i]) for i, cell in enumerate(row)) for row in rows]
    lines.append("")
    lines.append(f"unassigned: {stats.unassigned}")
    lines.append(f"cross-sentence: {stats.inter_sentence}")
    lines.append(
        f"direction 0/1: {stats.direction_counts[0]}/{stats.direction_counts[1]}"
    )
    return "\n".join(lines)
