"""Error breakdown of a predictions file by relation properties."""

from __future__ import annotations

import json
from pathlib import Path

from .config import DataError

SPAN_BUCKETS = ((1, 2), (3, 4), (5, 8), (9, None))


def bucket_label(span_tokens: int) -> str:
    for low, high in SPAN_BUCKETS:
        if high is None:
            if span_tokens >= low:
                return f"{low}+"
        elif low <= span_tokens <= high:
            return f"{low}-{high}"
    return "0"


def read_predictions(path: str | Path) -> tuple[dict, ...]:
    rows = []
    with open(path, encoding="utf-8") as fh:
        for line_no, line in enumerate(fh, start=1):
            if not line.strip():
                continue
            try:
                row = json.loads(line)
            except json.JSONDecodeError as exc:
                raise DataError(f"line {line_no}: not valid JSON: {exc.msg}") from None
            for key in ("original_id", "gold", "predicted", "inter_sentence"):
                if key not in row:
                    raise DataError(f"line {line_no}: missing field {key!r}")
            rows.append(row)
    return tuple(rows)


def _tally(rows, key_of) -> dict:
    slices: dict[str, dict] = {}
    for row in rows:
        cell = slices.setdefault(key_of(row), {"count": 0, "errors": 0})
        cell["count"] += 1
        if row["gold"] != row["predicted"]:
            cell["errors"] += 1
    for cell in slices.values():
        cell["error_rate"] = cell["errors"] / cell["count"]
    return dict(sorted(slices.items()))


def error_slices(path: str | Path) -> dict:
    rows = read_predictions(path)
    return {
        "total": len(rows),
        "inter_sentence": _tally(rows, lambda r: str(bool(r["inter_sentence"])).lower()),
        "span_tokens": _tally(rows, lambda r: bucket_label(int(r.get("span_tokens", 0)))),
    }
