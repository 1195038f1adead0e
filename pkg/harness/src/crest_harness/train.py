"""Seed loop: fine-tune, select by dev accuracy, evaluate on test."""

from __future__ import annotations

import copy
import json
import logging
import random
from dataclasses import dataclass
from pathlib import Path

import torch
from torch.utils.data import DataLoader, TensorDataset

from .config import DataError, TrainConfig
from .data import DEFAULT_MARKERS, check_markers, read_task_file, span_token_count
from .metrics import EvalMetrics, accuracy, score_seed
from .modeling import load_assets

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class TrainOutcome:
    metrics: EvalMetrics
    predictions: tuple[dict, ...]
    warnings: tuple[str, ...]


def _encode(tokenizer, examples, max_seq_len):
    batch = tokenizer(
        [ex.text for ex in examples],
        padding=True,
        truncation=True,
        max_length=max_seq_len,
        return_tensors="pt",
    )
    labels = torch.tensor([ex.target for ex in examples], dtype=torch.long)
    return TensorDataset(batch["input_ids"], batch["attention_mask"], labels)


@torch.no_grad()
def _predict(model, dataset, batch_size) -> list[int]:
    model.eval()
    out = []
    for input_ids, attention_mask, _ in DataLoader(dataset, batch_size=batch_size):
        logits = model(input_ids=input_ids, attention_mask=attention_mask).logits
        out.extend(logits.argmax(dim=-1).tolist())
    return out


def _train_one_seed(seed, config, tokenizer, factory, datasets):
    torch.manual_seed(seed)
    random.seed(seed)
    model = factory(seed)
    train_set, dev_set, _ = datasets

    loader = DataLoader(
        train_set,
        batch_size=config.batch_size,
        shuffle=True,
        generator=torch.Generator().manual_seed(seed),
    )
    optimizer = torch.optim.AdamW(model.parameters(), lr=config.learning_rate)

    dev_gold = dev_set.tensors[2].tolist()
    best_acc, best_state = -1.0, None
    for epoch in range(config.epochs):
        model.train()
        for input_ids, attention_mask, labels in loader:
            optimizer.zero_grad()
            loss = model(
                input_ids=input_ids, attention_mask=attention_mask, labels=labels
            ).loss
            loss.backward()
            optimizer.step()
        dev_acc = accuracy(dev_gold, _predict(model, dev_set, config.batch_size))
        log.info("seed %d epoch %d dev accuracy %.4f", seed, epoch + 1, dev_acc)
        if dev_acc > best_acc:
            best_acc = dev_acc
            best_state = copy.deepcopy(model.state_dict())

    model.load_state_dict(best_state)
    return model


def train_eval(
    config: TrainConfig,
    train_path: str | Path,
    dev_path: str | Path,
    test_path: str | Path,
    markers=DEFAULT_MARKERS,
    metrics_path: str | Path | None = None,
    predictions_path: str | Path | None = None,
) -> TrainOutcome:
    train_ex = read_task_file(train_path)
    dev_ex = read_task_file(dev_path)
    test_ex = read_task_file(test_path)
    if not train_ex or not dev_ex or not test_ex:
        raise DataError("train, dev, and test files must all be non-empty")
    check_markers(train_ex, markers)
    if len({ex.target for ex in train_ex}) < 2:
        raise DataError("training split contains a single class; nothing to learn")

    tokenizer, factory = load_assets(config, [ex.text for ex in train_ex], markers)
    datasets = tuple(
        _encode(tokenizer, examples, config.max_seq_len)
        for examples in (train_ex, dev_ex, test_ex)
    )
    test_gold = [ex.target for ex in test_ex]

    seed_results = []
    predictions = []
    warnings = []
    for seed in config.seeds:
        model = _train_one_seed(seed, config, tokenizer, factory, datasets)
        test_pred = _predict(model, datasets[2], config.batch_size)
        if len(set(test_pred)) == 1:
            warnings.append(f"seed {seed}: test predictions collapse to a single class")
        seed_results.append(score_seed(seed, test_gold, test_pred))
        for ex, pred in zip(test_ex, test_pred):
            predictions.append(
                {
                    "seed": seed,
                    "original_id": ex.original_id,
                    "gold": ex.target,
                    "predicted": pred,
                    "inter_sentence": ex.inter_sentence,
                    "span_tokens": span_token_count(ex.text, markers),
                }
            )

    outcome = TrainOutcome(
        metrics=EvalMetrics(per_seed=tuple(seed_results)),
        predictions=tuple(predictions),
        warnings=tuple(warnings),
    )
    if predictions_path:
        write_predictions(outcome.predictions, predictions_path)
    if metrics_path:
        from .metrics import metrics_to_dict

        report = metrics_to_dict(outcome.metrics)
        report["warnings"] = list(outcome.warnings)
        Path(metrics_path).write_text(
            json.dumps(report, indent=2) + "\n", encoding="utf-8"
        )
    return outcome


def write_predictions(rows, path: str | Path):
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        for row in rows:
            fh.write(json.dumps(row, ensure_ascii=False))
            fh.write("\n")
