"""Fine-tuning harness for marker-token relation classification task files."""

from .baseline import random_baseline
from .config import (
    DEFAULT_SEEDS,
    ConfigurationError,
    DataError,
    HarnessError,
    TrainConfig,
)
from .data import DEFAULT_MARKERS, TaskExample, read_task_file, span_token_count
from .metrics import (
    PRF,
    EvalMetrics,
    SeedResult,
    accuracy,
    binary_prf,
    macro_prf,
    metrics_to_dict,
    score_seed,
)
from .slices import error_slices
from .train import TrainOutcome, train_eval, write_predictions

__version__ = "0.1.0"

__all__ = [
    "DEFAULT_MARKERS",
    "DEFAULT_SEEDS",
    "ConfigurationError",
    "DataError",
    "EvalMetrics",
    "HarnessError",
    "PRF",
    "SeedResult",
    "TaskExample",
    "TrainConfig",
    "TrainOutcome",
    "accuracy",
    "binary_prf",
    "error_slices",
    "macro_prf",
    "metrics_to_dict",
    "random_baseline",
    "read_task_file",
    "score_seed",
    "span_token_count",
    "train_eval",
    "write_predictions",
]
