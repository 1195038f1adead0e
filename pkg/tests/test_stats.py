import json

import pytest

from crest_forge import (
    Corpus,
    CrestRelation,
    DatasetBreakdown,
    TokenSpan,
    compute_stats,
    render_report,
    stats_from_dict,
    stats_to_dict,
)

from genutil import flood_relation


def hand_corpus():
    timebank_ctx = "Prices fell sharply because of the sudden surge in supply."
    two_sent_ctx = "It rained hard. The field flooded."
    rels = (
        flood_relation(original_id="s1", split=0),
        flood_relation(original_id="s2", label=0, direction=-1, split=1),
        CrestRelation(
            original_id="t1",
            dataset_id=4,
            span1=TokenSpan(("fell",), ((7, 11),)),
            span2=TokenSpan(("surge",), ((42, 47),)),
            signal=TokenSpan(("because", "of"), ((20, 27), (28, 30))),
            context=timebank_ctx,
            label=1,
            direction=1,
            split=2,
        ),
        CrestRelation(
            original_id="t2",
            dataset_id=4,
            span1=TokenSpan(("rained",), ((3, 9),)),
            span2=TokenSpan(("flooded",), ((26, 33),)),
            signal=TokenSpan(),
            context=two_sent_ctx,
            label=1,
            direction=0,
        ),
    )
    return Corpus(relations=rels, source_name="hand")


def test_compute_stats_hand_counts():
    stats = compute_stats(hand_corpus())
    assert stats.total == 4
    assert stats.causal == 3
    assert stats.non_causal == 1
    assert stats.with_signal == 1
    assert stats.inter_sentence == 1
    assert stats.direction_counts == (1, 2)
    assert stats.split_counts == (1, 1, 1)
    assert stats.unassigned == 1
    assert stats.span_token_hist == {1: 6, 3: 2}
    assert stats.per_dataset == {
        2: DatasetBreakdown(causal=1, non_causal=1, with_signal=0, split_counts=(1, 1, 0)),
        4: DatasetBreakdown(causal=2, non_causal=0, with_signal=1, split_counts=(0, 0, 1)),
    }
    assert stats.per_dataset[2].total == 2


def test_table_report_cells():
    text = render_report(compute_stats(hand_corpus()), "table-text")
    lines = text.splitlines()
    assert lines[0].split() == [
        "dataset", "total", "causal", "non-causal", "signal", "train", "dev", "test",
    ]
    assert lines[1].split() == ["2", "2", "1", "1", "0", "1", "1", "0"]
    assert lines[2].split() == ["4", "2", "2", "0", "1", "0", "0", "1"]
    assert lines[3].split() == ["all", "4", "3", "1", "1", "1", "1", "1"]
    assert lines[4] == ""
    assert lines[5] == "unassigned: 1"
    assert lines[6] == "cross-sentence: 1"
    assert lines[7] == "direction 0/1: 1/2"


def test_json_report_round_trips():
    stats = compute_stats(hand_corpus())
    rendered = render_report(stats, "json")
    assert stats_from_dict(json.loads(rendered)) == stats
    assert stats_from_dict(stats_to_dict(stats)) == stats


def test_empty_corpus():
    stats = compute_stats(Corpus())
    assert stats.total == 0
    assert stats.span_token_hist == {}
    assert stats.per_dataset == {}
    lines = render_report(stats, "table-text").splitlines()
    assert lines[1].split() == ["all", "0", "0", "0", "0", "0", "0", "0"]


def test_unknown_format_rejected():
    with pytest.raises(ValueError):
        render_report(compute_stats(Corpus()), "csv")
