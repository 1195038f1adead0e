import pytest

from crest_harness import (
    EvalMetrics,
    PRF,
    accuracy,
    binary_prf,
    macro_prf,
    metrics_to_dict,
    score_seed,
)

# hand-worked confusion table: positive class 0
# gold:  0 0 0 0 0 1 1 1 1 1
# pred:  0 0 0 1 1 1 1 1 0 0
GOLD = [0, 0, 0, 0, 0, 1, 1, 1, 1, 1]
PRED = [0, 0, 0, 1, 1, 1, 1, 1, 0, 0]


def test_hand_confusion_table():
    m = binary_prf(GOLD, PRED, positive=0)
    assert (m.precision, m.recall, m.f1) == (0.6, 0.6, 0.6)
    m1 = binary_prf(GOLD, PRED, positive=1)
    assert (m1.precision, m1.recall, m1.f1) == (0.6, 0.6, 0.6)
    mm = macro_prf(GOLD, PRED)
    assert (mm.precision, mm.recall, mm.f1) == (0.6, 0.6, 0.6)
    assert accuracy(GOLD, PRED) == 0.6


def test_skewed_predictions():
    gold, pred = [0, 1, 0, 1], [0, 0, 0, 0]
    m = binary_prf(gold, pred, positive=0)
    assert m.precision == 0.5
    assert m.recall == 1.0
    assert m.f1 == pytest.approx(2 / 3)
    m1 = binary_prf(gold, pred, positive=1)
    assert (m1.precision, m1.recall, m1.f1) == (0.0, 0.0, 0.0)
    mm = macro_prf(gold, pred)
    assert mm.recall == 0.5


def test_zero_division_is_zero():
    m = binary_prf([1, 1], [1, 1], positive=0)
    assert (m.precision, m.recall, m.f1) == (0.0, 0.0, 0.0)
    assert accuracy([], []) == 0.0


def test_length_mismatch_rejected():
    with pytest.raises(ValueError):
        binary_prf([0, 1], [0])


def test_prf_bounds_enforced():
    with pytest.raises(ValueError):
        PRF(1.2, 0.5, 0.5)
    with pytest.raises(ValueError):
        PRF(0.5, -0.1, 0.5)


def test_mean_is_arithmetic_mean():
    seeds = [
        score_seed(1, GOLD, PRED),
        score_seed(2, GOLD, GOLD),
        score_seed(3, GOLD, [1 - g for g in GOLD]),
    ]
    metrics = EvalMetrics(per_seed=tuple(seeds))
    f1s = [s.binary.f1 for s in seeds]
    assert metrics.f1 == pytest.approx(sum(f1s) / 3)
    assert f1s == [0.6, 1.0, 0.0]
    assert metrics.precision == pytest.approx((0.6 + 1.0 + 0.0) / 3)


def test_empty_per_seed_rejected():
    with pytest.raises(ValueError):
        EvalMetrics(per_seed=())


def test_metrics_dict_shape():
    metrics = EvalMetrics(per_seed=(score_seed(9, GOLD, PRED),))
    report = metrics_to_dict(metrics)
    assert set(report) == {"mean", "per_seed"}
    assert report["mean"]["f1"] == 0.6
    row = report["per_seed"][0]
    assert row["seed"] == 9
    assert row["macro_f1"] == 0.6
    assert row["accuracy"] == 0.6
