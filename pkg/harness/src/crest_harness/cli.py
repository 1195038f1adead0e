"""CLI over the harness: train, baseline, slices.

Exit codes: 0 success, 1 usage problems, 2 data or configuration problems.
Errors print one JSON object on stderr.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys

from .baseline import random_baseline
from .config import DEFAULT_SEEDS, ConfigurationError, HarnessError, TrainConfig
from .data import DEFAULT_MARKERS
from .metrics import metrics_to_dict
from .slices import error_slices
from .train import train_eval


def _emit_error(code: str, message: str):
    print(json.dumps({"error": {"code": code, "message": message}}), file=sys.stderr)


def _parse_seeds(raw: str) -> tuple[int, ...]:
    try:
        return tuple(int(s) for s in raw.split(","))
    except ValueError:
        raise ConfigurationError(f"bad seed list {raw!r}") from None


def _parse_markers(raw: str | None):
    if raw is None:
        return DEFAULT_MARKERS
    markers = tuple(raw.split(","))
    if len(markers) < 4 or not all(markers):
        raise ConfigurationError("--markers needs at least four non-empty tokens")
    return markers


def _cmd_train(args) -> int:
    config = TrainConfig(
        model_name=args.model,
        batch_size=args.batch_size,
        learning_rate=args.learning_rate,
        epochs=args.epochs,
        max_seq_len=args.max_seq_len,
        seeds=_parse_seeds(args.seeds),
    )
    outcome = train_eval(
        config,
        args.train,
        args.dev,
        args.test,
        markers=_parse_markers(args.markers),
        metrics_path=args.metrics_out,
        predictions_path=args.predictions_out,
    )
    report = metrics_to_dict(outcome.metrics)
    report["warnings"] = list(outcome.warnings)
    print(json.dumps(report, indent=2))
    return 0


def _cmd_baseline(args) -> int:
    metrics = random_baseline(args.test, seeds=_parse_seeds(args.seeds))
    print(json.dumps(metrics_to_dict(metrics), indent=2))
    return 0


def _cmd_slices(args) -> int:
    print(json.dumps(error_slices(args.predictions), indent=2))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="crest-harness",
        description="Fine-tune and evaluate classifiers on marker-token task files.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    train = sub.add_parser("train", help="fine-tune over seeds and report test metrics")
    train.add_argument("--train", required=True)
    train.add_argument("--dev", required=True)
    train.add_argument("--test", required=True)
    train.add_argument("--model", default="bert-base-cased")
    train.add_argument("--batch-size", type=int, default=16)
    train.add_argument("--learning-rate", type=float, default=2e-5)
    train.add_argument("--epochs", type=int, default=10)
    train.add_argument("--max-seq-len", type=int, default=128)
    train.add_argument("--seeds", default=",".join(str(s) for s in DEFAULT_SEEDS))
    train.add_argument("--markers", help="comma-separated marker tokens")
    train.add_argument("--metrics-out")
    train.add_argument("--predictions-out")
    train.set_defaults(fn=_cmd_train)

    baseline = sub.add_parser("baseline", help="uniform random predictions on a test file")
    baseline.add_argument("--test", required=True)
    baseline.add_argument("--seeds", default=",".join(str(s) for s in DEFAULT_SEEDS))
    baseline.set_defaults(fn=_cmd_baseline)

    slices = sub.add_parser("slices", help="error rates by slice of a predictions file")
    slices.add_argument("--predictions", required=True)
    slices.set_defaults(fn=_cmd_slices)

    return parser


def main(argv=None) -> int:
    level = os.environ.get("CREST_HARNESS_LOG")
    if level:
        logging.basicConfig(level=getattr(logging, level.upper(), logging.INFO))
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code in (0, None) else 1
    try:
        return args.fn(args)
    except FileNotFoundError as exc:
        _emit_error("usage", f"file not found: {exc.filename}")
        return 1
    except HarnessError as exc:
        _emit_error(type(exc).__name__, str(exc))
        return 2


if __name__ == "__main__":
    sys.exit(main())
