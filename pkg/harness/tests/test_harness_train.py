import json

import pytest

from crest_harness import (
    ConfigurationError,
    DataError,
    TrainConfig,
    train_eval,
)

from harnessgen import toy_direction_rows, toy_task_files, write_jsonl

SMOKE = TrainConfig(
    model_name="tiny", learning_rate=1e-3, epochs=2, max_seq_len=32, seeds=(13,)
)


def small_files(tmp_path):
    return toy_task_files(tmp_path, seed=19, train=96, dev=24, test=40)


def test_smoke_train_returns_complete_outcome(tmp_path):
    paths = small_files(tmp_path)
    outcome = train_eval(SMOKE, paths["train"], paths["dev"], paths["test"])
    assert len(outcome.metrics.per_seed) == 1
    assert 0.0 <= outcome.metrics.f1 <= 1.0
    assert len(outcome.predictions) == 40
    sample = outcome.predictions[0]
    assert set(sample) == {
        "seed", "original_id", "gold", "predicted", "inter_sentence", "span_tokens",
    }
    assert sample["seed"] == 13
    assert sample["span_tokens"] == 2


def test_output_files_written(tmp_path):
    paths = small_files(tmp_path)
    metrics_path = tmp_path / "metrics.json"
    predictions_path = tmp_path / "preds.jsonl"
    outcome = train_eval(
        SMOKE,
        paths["train"],
        paths["dev"],
        paths["test"],
        metrics_path=metrics_path,
        predictions_path=predictions_path,
    )
    report = json.loads(metrics_path.read_text(encoding="utf-8"))
    assert report["mean"]["f1"] == pytest.approx(outcome.metrics.f1)
    assert report["per_seed"][0]["seed"] == 13
    assert "warnings" in report
    lines = predictions_path.read_text(encoding="utf-8").splitlines()
    assert len(lines) == 40
    assert json.loads(lines[0])["original_id"] == outcome.predictions[0]["original_id"]


def test_single_class_train_is_an_error(tmp_path):
    rows = toy_direction_rows(23, 40)
    for row in rows:
        row["target"] = 1
    for name in ("train", "dev", "test"):
        write_jsonl(tmp_path / f"{name}.jsonl", rows)
    with pytest.raises(DataError, match="single class"):
        train_eval(
            SMOKE, tmp_path / "train.jsonl", tmp_path / "dev.jsonl", tmp_path / "test.jsonl"
        )


def test_missing_markers_is_a_configuration_error(tmp_path):
    rows = toy_direction_rows(29, 40)
    for row in rows:
        for n in range(1, 7):
            row["text"] = row["text"].replace(f"[unused{n}]", "")
    for name in ("train", "dev", "test"):
        write_jsonl(tmp_path / f"{name}.jsonl", rows)
    with pytest.raises(ConfigurationError):
        train_eval(
            SMOKE, tmp_path / "train.jsonl", tmp_path / "dev.jsonl", tmp_path / "test.jsonl"
        )


def test_empty_split_is_an_error(tmp_path):
    paths = small_files(tmp_path)
    empty = tmp_path / "empty.jsonl"
    empty.write_text("", encoding="utf-8")
    with pytest.raises(DataError, match="non-empty"):
        train_eval(SMOKE, paths["train"], empty, paths["test"])


def test_same_seed_reproduces_metrics(tmp_path):
    paths = small_files(tmp_path)
    first = train_eval(SMOKE, paths["train"], paths["dev"], paths["test"])
    second = train_eval(SMOKE, paths["train"], paths["dev"], paths["test"])
    assert first.metrics == second.metrics
    assert first.predictions == second.predictions
