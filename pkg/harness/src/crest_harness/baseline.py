"""Uniform random baseline scored the same way as trained models."""

from __future__ import annotations

import random
from pathlib import Path

from .config import DEFAULT_SEEDS
from .data import read_task_file
from .metrics import EvalMetrics, score_seed


def random_baseline(test_path: str | Path, seeds=DEFAULT_SEEDS) -> EvalMetrics:
    examples = read_task_file(test_path)
    gold = [ex.target for ex in examples]
    results = []
    for seed in seeds:
        rng = random.Random(seed)
        pred = [rng.randrange(2) for _ in examples]
        results.append(score_seed(seed, gold, pred))
    return EvalMetrics(per_seed=tuple(results))
