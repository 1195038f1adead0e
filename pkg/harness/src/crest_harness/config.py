"""Run configuration for fine-tuning."""

from __future__ import annotations

from dataclasses import dataclass, field


class HarnessError(Exception):
    """Base class for harness errors."""


class ConfigurationError(HarnessError):
    """Unusable configuration, e.g. marker tokens never seen in training data."""


class DataError(HarnessError):
    """Task or prediction files that cannot be trained on as given."""


DEFAULT_SEEDS = (13, 42, 87, 2020)


@dataclass(frozen=True)
class TrainConfig:
    """Hyperparameters; defaults are the standard fine-tuning recipe.

    model_name "tiny" builds a small randomly initialized encoder with a
    word-level tokenizer fitted on the training split, which keeps tests and
    smoke runs self-contained. Any other value is treated as a pretrained
    checkpoint for AutoTokenizer/AutoModel.
    """

    model_name: str = "bert-base-cased"
    batch_size: int = 16
    learning_rate: float = 2e-5
    epochs: int = 10
    max_seq_len: int = 128
    seeds: tuple[int, ...] = field(default=DEFAULT_SEEDS)

    def __post_init__(self):
        if self.batch_size < 1:
            raise ConfigurationError("batch_size must be positive")
        if self.learning_rate <= 0:
            raise ConfigurationError("learning_rate must be positive")
        if self.epochs < 1:
            raise ConfigurationError("epochs must be positive")
        if self.max_seq_len < 8:
            raise ConfigurationError("max_seq_len must be at least 8")
        if not self.seeds:
            raise ConfigurationError("at least one seed is required")
        object.__setattr__(self, "seeds", tuple(int(s) for s in self.seeds))
