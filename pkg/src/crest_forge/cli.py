"""Command-line pipeline: convert, validate, split, sequence, stats.

Exit codes: 0 on success, 1 for usage or configuration problems, 2 for data
problems (malformed input, validation failures, leakage). Errors are
printed as a single JSON object on stderr so callers can script against
them. Set CREST_FORGE_LOG to a level name for diagnostics.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from pathlib import Path

from . import adapters
from .model import Corpus, CrestError, read_corpus, write_corpus
from .sequences import MarkerScheme, Task, emit_task_dataset
from .splitting import CASEFOLD_WS, SHARED_SUBSTRING, OverlapPolicy, assign_splits
from .stats import compute_stats, render_report
from .textutil import Normalization

log = logging.getLogger(__name__)


class UsageError(Exception):
    """Bad flags or configuration; maps to exit code 1."""


def _emit_error(code: str, message: str):
    print(json.dumps({"error": {"code": code, "message": message}}), file=sys.stderr)


def _load_config(path: str) -> tuple[dict, Path]:
    config_path = Path(path)
    try:
        config = json.loads(config_path.read_text(encoding="utf-8"))
    except FileNotFoundError:
        raise UsageError(f"config file not found: {path}") from None
    except json.JSONDecodeError as exc:
        raise UsageError(f"config is not valid JSON: {exc}") from None
    if not isinstance(config, dict):
        raise UsageError("config must be a JSON object")
    return config, config_path.parent


def _policy_from(config: dict) -> Normalization:
    raw = config.get("normalization", Normalization.NFC_COLLAPSE_WS.value)
    try:
        return Normalization(raw)
    except ValueError:
        raise UsageError(f"unknown normalization {raw!r}") from None


def _cmd_convert(args) -> int:
    config, base = _load_config(args.config)
    policy = _policy_from(config)
    specs = config.get("datasets")
    if not isinstance(specs, list) or not specs:
        raise UsageError("config needs a non-empty 'datasets' list")

    jobs = []
    for entry in specs:
        if not isinstance(entry, dict) or "name" not in entry or not entry.get("paths"):
            raise UsageError("each dataset entry needs 'name' and non-empty 'paths'")
        try:
            spec = adapters.get_adapter(entry["name"])
        except adapters.UnknownAdapterError as exc:
            raise UsageError(str(exc)) from None
        paths = [base / p for p in entry["paths"]]
        for p in paths:
            if not p.exists():
                raise UsageError(f"input path does not exist: {p}")
        jobs.append((spec, paths))

    jobs.sort(key=lambda job: job[0].dataset_id)
    relations = []
    skips = []
    for spec, paths in jobs:
        got, missed = adapters.parse_dataset(spec.name, paths, policy)
        relations += got
        skips += [(spec.dataset_id, s) for s in missed]
        log.info("%s: %d relations, %d skipped", spec.name, len(got), len(missed))

    if args.strict:
        bad = [s for _, s in skips if s.reason is adapters.SkipReason.MALFORMED]
        if bad:
            raise CrestError(
                f"{len(bad)} malformed annotations, first: "
                f"{bad[0].original_id} ({bad[0].detail})"
            )

    corpus = Corpus(relations=tuple(relations), normalization_policy=policy)
    write_corpus(corpus, args.output)
    if args.skips:
        with open(args.skips, "w", encoding="utf-8", newline="\n") as fh:
            for dataset_id, skip in skips:
                row = {
                    "dataset_id": dataset_id,
                    "original_id": skip.original_id,
                    "reason": skip.reason.value,
                    "detail": skip.detail,
                }
                fh.write(json.dumps(row, ensure_ascii=False))
                fh.write("\n")
    print(json.dumps({"relations": len(relations), "skipped": len(skips)}))
    return 0


def _cmd_validate(args) -> int:
    corpus = read_corpus(args.corpus, on_invalid="ledger")
    issues = len(corpus.validation_ledger)
    summary = {
        "relations": len(corpus.relations),
        "invalid_relations": len({i for i, _ in corpus.validation_ledger}),
        "issues": issues,
    }
    if corpus.validation_ledger:
        first_index = corpus.validation_ledger[0][0]
        summary["first"] = {
            "line": first_index + 1,
            "codes": [c.value for i, c in corpus.validation_ledger if i == first_index],
        }
        print(json.dumps(summary))
        raise CrestError(f"{issues} validation issues in {args.corpus}")
    print(json.dumps(summary))
    return 0


def _split_policy(args) -> OverlapPolicy:
    try:
        return OverlapPolicy(
            normalization=args.normalization,
            mode=args.mode,
            min_shared_chars=args.min_shared_chars,
        )
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _cmd_split(args) -> int:
    try:
        ratios = tuple(float(r) for r in args.ratios.split(":"))
    except ValueError:
        raise UsageError(f"bad ratios {args.ratios!r}") from None
    if len(ratios) != 3:
        raise UsageError("ratios must have three parts, e.g. 80:10:10")
    total = sum(ratios)
    if total <= 0:
        raise UsageError("ratios must sum to a positive number")
    ratios = tuple(r / total for r in ratios)

    corpus = read_corpus(args.corpus)
    split_corpus, report = assign_splits(
        corpus, ratios=ratios, seed=args.seed, policy=_split_policy(args)
    )
    write_corpus(split_corpus, args.output)
    print(
        json.dumps(
            {
                "sizes": list(report.sizes),
                "groups": report.group_count,
                "max_group": report.max_group_size,
            }
        )
    )
    return 0


def _cmd_sequence(args) -> int:
    scheme_args = {}
    if args.markers:
        names = args.markers.split(",")
        if len(names) != 6:
            raise UsageError("--markers needs six comma-separated tokens")
        keys = (
            "span1_open",
            "span1_close",
            "span2_open",
            "span2_close",
            "signal_open",
            "signal_close",
        )
        scheme_args = dict(zip(keys, names))
    try:
        scheme = MarkerScheme(mark_signal=args.mark_signal, **scheme_args)
    except ValueError as exc:
        raise UsageError(str(exc)) from None

    corpus = read_corpus(args.corpus)
    counts = emit_task_dataset(
        corpus,
        task=Task(args.task),
        out_dir=args.out_dir,
        scheme=scheme,
        with_direction=args.with_direction,
    )
    print(json.dumps(counts))
    return 0


def _cmd_stats(args) -> int:
    corpus = read_corpus(args.corpus)
    print(render_report(compute_stats(corpus), args.format))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="crest-forge",
        description="Unify causal-relation corpora, split them safely, emit task files.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    convert = sub.add_parser("convert", help="parse source corpora into one JSONL file")
    convert.add_argument("--config", required=True, help="JSON config with dataset entries")
    convert.add_argument("--output", required=True, help="corpus JSONL to write")
    convert.add_argument("--skips", help="optional skip-report JSONL")
    convert.add_argument(
        "--strict", action="store_true", help="fail if any annotation was malformed"
    )
    convert.set_defaults(fn=_cmd_convert)

    validate = sub.add_parser("validate", help="check a corpus file")
    validate.add_argument("corpus")
    validate.set_defaults(fn=_cmd_validate)

    split = sub.add_parser("split", help="assign train/dev/test without context leakage")
    split.add_argument("corpus")
    split.add_argument("--output", required=True)
    split.add_argument("--seed", type=int, required=True)
    split.add_argument("--ratios", default="80:10:10")
    split.add_argument(
        "--mode",
        default=SHARED_SUBSTRING,
        choices=("equality", "containment", "shared-substring"),
    )
    split.add_argument(
        "--normalization",
        default=CASEFOLD_WS,
        choices=("exact", "casefold+collapse-whitespace"),
    )
    split.add_argument("--min-shared-chars", type=int, default=50)
    split.set_defaults(fn=_cmd_split)

    sequence = sub.add_parser("sequence", help="emit marker-token task files per split")
    sequence.add_argument("corpus")
    sequence.add_argument("--task", required=True, choices=[t.value for t in Task])
    sequence.add_argument("--out-dir", required=True)
    sequence.add_argument("--with-direction", action="store_true")
    sequence.add_argument("--mark-signal", action="store_true")
    sequence.add_argument("--markers", help="six comma-separated marker tokens")
    sequence.set_defaults(fn=_cmd_sequence)

    stats = sub.add_parser("stats", help="print corpus statistics")
    stats.add_argument("corpus")
    stats.add_argument("--format", default="table-text", choices=("table-text", "json"))
    stats.set_defaults(fn=_cmd_stats)

    return parser


def main(argv=None) -> int:
    level = os.environ.get("CREST_FORGE_LOG")
    if level:
        logging.basicConfig(level=getattr(logging, level.upper(), logging.INFO))
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code in (0, None) else 1
    try:
        return args.fn(args)
    except UsageError as exc:
        _emit_error("usage", str(exc))
        return 1
    except FileNotFoundError as exc:
        _emit_error("usage", f"file not found: {exc.filename}")
        return 1
    except CrestError as exc:
        _emit_error(type(exc).__name__, str(exc))
        return 2


if __name__ == "__main__":
    sys.exit(main())
