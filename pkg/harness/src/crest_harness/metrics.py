"""Precision/recall/F1 with per-seed breakdown and arithmetic-mean reporting.

Headline numbers are binary metrics on target class 0 (span1 causes span2);
macro averages over both classes ride along for comparability.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence


@dataclass(frozen=True)
class PRF:
    precision: float
    recall: float
    f1: float

    def __post_init__(self):
        for value in (self.precision, self.recall, self.f1):
            if not 0.0 <= value <= 1.0:
                raise ValueError(f"metric out of range: {value}")


def binary_prf(gold: Sequence[int], pred: Sequence[int], positive: int = 0) -> PRF:
    if len(gold) != len(pred):
        raise ValueError("gold and predictions must have equal length")
    tp = fp = fn = 0
    for g, p in zip(gold, pred):
        if p == positive and g == positive:
            tp += 1
        elif p == positive:
            fp += 1
        elif g == positive:
            fn += 1
    precision = tp / (tp + fp) if tp + fp else 0.0
    recall = tp / (tp + fn) if tp + fn else 0.0
    f1 = 2 * precision * recall / (precision + recall) if precision + recall else 0.0
    return PRF(precision, recall, f1)


def macro_prf(gold: Sequence[int], pred: Sequence[int]) -> PRF:
    per_class = [binary_prf(gold, pred, positive=c) for c in (0, 1)]
    return PRF(
        precision=sum(m.precision for m in per_class) / 2,
        recall=sum(m.recall for m in per_class) / 2,
        f1=sum(m.f1 for m in per_class) / 2,
    )


def accuracy(gold: Sequence[int], pred: Sequence[int]) -> float:
    if not gold:
        return 0.0
    return sum(g == p for g, p in zip(gold, pred)) / len(gold)


@dataclass(frozen=True)
class SeedResult:
    seed: int
    binary: PRF
    macro: PRF
    accuracy: float


@dataclass(frozen=True)
class EvalMetrics:
    per_seed: tuple[SeedResult, ...]

    def __post_init__(self):
        if not self.per_seed:
            raise ValueError("at least one seed result is required")

    def _mean(self, pick) -> float:
        return sum(pick(s) for s in self.per_seed) / len(self.per_seed)

    @property
    def precision(self) -> float:
        return self._mean(lambda s: s.binary.precision)

    @property
    def recall(self) -> float:
        return self._mean(lambda s: s.binary.recall)

    @property
    def f1(self) -> float:
        return self._mean(lambda s: s.binary.f1)

    @property
    def macro_f1(self) -> float:
        return self._mean(lambda s: s.macro.f1)


def score_seed(seed: int, gold: Sequence[int], pred: Sequence[int]) -> SeedResult:
    return SeedResult(
        seed=seed,
        binary=binary_prf(gold, pred),
        macro=macro_prf(gold, pred),
        accuracy=accuracy(gold, pred),
    )


def metrics_to_dict(metrics: EvalMetrics) -> dict:
    return {
        "mean": {
            "precision": metrics.precision,
            "recall": metrics.recall,
            "f1": metrics.f1,
            "macro_f1": metrics.macro_f1,
        },
        "per_seed": [
            {
                "seed": s.seed,
                "precision": s.binary.precision,
                "recall": s.binary.recall,
                "f1": s.binary.f1,
                "macro_precision": s.macro.precision,
                "macro_recall": s.macro.recall,
                "macro_f1": s.macro.f1,
                "accuracy": s.accuracy,
            }
            for s in metrics.per_seed
        ],
    }
