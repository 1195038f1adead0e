import json
from pathlib import Path

import pytest

from crest_forge import cli, read_corpus, relation_to_dict

from genutil import flood_relation

FIXTURES = Path(__file__).parent / "fixtures"
PIPELINE = str(FIXTURES / "pipeline.json")

TOTAL_RELATIONS = 31
TOTAL_SKIPS = 10
TOTAL_CAUSAL = 24
PER_DATASET = {1: 4, 2: 3, 3: 3, 4: 2, 5: 4, 6: 2, 7: 2, 8: 8, 9: 3}


def run(capsys, *argv):
    code = cli.main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def convert(capsys, tmp_path, *extra):
    out = tmp_path / "corpus.jsonl"
    code, stdout, stderr = run(
        capsys, "convert", "--config", PIPELINE, "--output", str(out), *extra
    )
    return code, stdout, stderr, out


def split(capsys, corpus, out, seed=13):
    return run(capsys, "split", str(corpus), "--output", str(out), "--seed", str(seed))


def test_convert_all_datasets(capsys, tmp_path):
    code, stdout, _, out = convert(capsys, tmp_path)
    assert code == 0
    assert json.loads(stdout) == {"relations": TOTAL_RELATIONS, "skipped": TOTAL_SKIPS}

    corpus = read_corpus(out)
    ids = [r.dataset_id for r in corpus.relations]
    assert ids == sorted(ids)
    counts = {}
    for i in ids:
        counts[i] = counts.get(i, 0) + 1
    assert counts == PER_DATASET


def test_convert_skip_report(capsys, tmp_path):
    report = tmp_path / "skips.jsonl"
    code, _, _, _ = convert(capsys, tmp_path, "--skips", str(report))
    assert code == 0
    rows = [json.loads(l) for l in report.read_text(encoding="utf-8").splitlines()]
    assert len(rows) == TOTAL_SKIPS
    assert all(set(r) == {"dataset_id", "original_id", "reason", "detail"} for r in rows)
    assert {r["reason"] for r in rows} == {
        "malformed",
        "excluded-relation-type",
        "excluded-sense",
    }


def test_convert_strict_fails_on_malformed(capsys, tmp_path):
    code, _, stderr, out = convert(capsys, tmp_path, "--strict")
    assert code == 2
    error = json.loads(stderr)["error"]
    assert error["code"] == "CrestError"
    assert "malformed" in error["message"]
    assert not out.exists()


def test_convert_missing_config(capsys, tmp_path):
    code, _, stderr = run(
        capsys, "convert", "--config", str(tmp_path / "nope.json"), "--output", "x"
    )
    assert code == 1
    assert json.loads(stderr)["error"]["code"] == "usage"


def test_convert_unknown_dataset(capsys, tmp_path):
    config = tmp_path / "bad.json"
    config.write_text(json.dumps({"datasets": [{"name": "mystery", "paths": ["x"]}]}))
    code, _, stderr = run(
        capsys, "convert", "--config", str(config), "--output", str(tmp_path / "o")
    )
    assert code == 1
    assert json.loads(stderr)["error"]["code"] == "usage"


def test_convert_missing_input_path(capsys, tmp_path):
    config = tmp_path / "gone.json"
    config.write_text(
        json.dumps({"datasets": [{"name": "copa", "paths": ["not-there.xml"]}]})
    )
    code, _, stderr = run(
        capsys, "convert", "--config", str(config), "--output", str(tmp_path / "o")
    )
    assert code == 1
    assert "not-there.xml" in json.loads(stderr)["error"]["message"]


def test_validate_clean_corpus(capsys, tmp_path):
    _, _, _, out = convert(capsys, tmp_path)
    code, stdout, stderr = run(capsys, "validate", str(out))
    assert code == 0
    assert json.loads(stdout) == {
        "relations": TOTAL_RELATIONS,
        "invalid_relations": 0,
        "issues": 0,
    }
    assert stderr == ""


def test_validate_reports_bad_rows(capsys, tmp_path):
    rows = [
        relation_to_dict(flood_relation()),
        relation_to_dict(flood_relation(original_id="bad1", label=5)),
    ]
    corpus = tmp_path / "mixed.jsonl"
    corpus.write_text(
        "".join(json.dumps(r, ensure_ascii=False) + "\n" for r in rows), encoding="utf-8"
    )
    code, stdout, stderr = run(capsys, "validate", str(corpus))
    assert code == 2
    summary = json.loads(stdout)
    assert summary["relations"] == 2
    assert summary["invalid_relations"] == 1
    assert summary["issues"] == 1
    assert summary["first"] == {"line": 2, "codes": ["BAD_LABEL"]}
    assert json.loads(stderr)["error"]["code"] == "CrestError"


def test_validate_missing_file(capsys, tmp_path):
    code, _, stderr = run(capsys, "validate", str(tmp_path / "absent.jsonl"))
    assert code == 1
    assert json.loads(stderr)["error"]["code"] == "usage"


def test_split_assigns_everything(capsys, tmp_path):
    _, _, _, corpus = convert(capsys, tmp_path)
    out = tmp_path / "split.jsonl"
    code, stdout, _ = split(capsys, corpus, out)
    assert code == 0
    report = json.loads(stdout)
    assert sum(report["sizes"]) == TOTAL_RELATIONS
    assert report["groups"] >= 1
    splits = [r.split for r in read_corpus(out).relations]
    assert all(s in (0, 1, 2) for s in splits)


def test_split_same_seed_byte_identical(capsys, tmp_path):
    _, _, _, corpus = convert(capsys, tmp_path)
    a, b = tmp_path / "a.jsonl", tmp_path / "b.jsonl"
    split(capsys, corpus, a)
    split(capsys, corpus, b)
    assert a.read_bytes() == b.read_bytes()


def test_split_bad_ratios(capsys, tmp_path):
    _, _, _, corpus = convert(capsys, tmp_path)
    code, _, stderr = run(
        capsys,
        "split", str(corpus), "--output", str(tmp_path / "s"), "--seed", "1",
        "--ratios", "80:10",
    )
    assert code == 1
    assert json.loads(stderr)["error"]["code"] == "usage"


def sequence(capsys, corpus, out_dir, task, *extra):
    return run(
        capsys, "sequence", str(corpus), "--task", task, "--out-dir", str(out_dir), *extra
    )


def test_sequence_counts(capsys, tmp_path):
    _, _, _, corpus = convert(capsys, tmp_path)
    split_out = tmp_path / "split.jsonl"
    split(capsys, corpus, split_out)

    code, stdout, _ = sequence(capsys, split_out, tmp_path / "pair", "pair")
    assert code == 0
    assert sum(json.loads(stdout).values()) == TOTAL_RELATIONS

    code, stdout, _ = sequence(capsys, split_out, tmp_path / "dir", "direction")
    assert code == 0
    assert sum(json.loads(stdout).values()) == TOTAL_CAUSAL


def test_sequence_requires_split_corpus(capsys, tmp_path):
    _, _, _, corpus = convert(capsys, tmp_path)
    code, _, stderr = sequence(capsys, corpus, tmp_path / "seq", "pair")
    assert code == 2
    assert json.loads(stderr)["error"]["code"] == "SequenceError"


def test_sequence_custom_markers(capsys, tmp_path):
    _, _, _, corpus = convert(capsys, tmp_path)
    split_out = tmp_path / "split.jsonl"
    split(capsys, corpus, split_out)
    out_dir = tmp_path / "custom"
    code, _, _ = sequence(
        capsys, split_out, out_dir, "pair", "--markers", "<A>,</A>,<B>,</B>,<S>,</S>"
    )
    assert code == 0
    text = (out_dir / "train.jsonl").read_text(encoding="utf-8")
    assert "<A> " in text and " </B>" in text and "[unused1]" not in text

    code, _, stderr = sequence(
        capsys, split_out, tmp_path / "short", "pair", "--markers", "a,b,c,d,e"
    )
    assert code == 1
    assert json.loads(stderr)["error"]["code"] == "usage"


def test_stats_formats(capsys, tmp_path):
    _, _, _, corpus = convert(capsys, tmp_path)
    code, stdout, _ = run(capsys, "stats", str(corpus), "--format", "json")
    assert code == 0
    report = json.loads(stdout)
    assert report["total"] == TOTAL_RELATIONS
    assert report["causal"] == TOTAL_CAUSAL

    code, stdout, _ = run(capsys, "stats", str(corpus))
    assert code == 0
    lines = stdout.splitlines()
    assert lines[0].split()[0] == "dataset"
    assert any(line.split()[:2] == ["all", str(TOTAL_RELATIONS)] for line in lines)


def test_help_is_exit_zero(capsys):
    assert run(capsys, "--help")[0] == 0
    assert run(capsys, "convert", "--help")[0] == 0


def test_bad_usage_is_exit_one(capsys):
    assert run(capsys, "")[0] == 1
    assert run(capsys, "transmogrify")[0] == 1
    assert cli.main([]) == 1
    capsys.readouterr()


def test_log_env_var_is_honored(capsys, tmp_path, monkeypatch):
    monkeypatch.setenv("CREST_FORGE_LOG", "debug")
    code, _, _, _ = convert(capsys, tmp_path)
    assert code == 0
    monkeypatch.setenv("CREST_FORGE_LOG", "not-a-level")
    code, _, _, _ = convert(capsys, tmp_path)
    assert code == 0


def test_full_pipeline_rerun_is_byte_identical(capsys, tmp_path):
    outputs = []
    for name in ("one", "two"):
        base = tmp_path / name
        base.mkdir()
        corpus = base / "corpus.jsonl"
        run(capsys, "convert", "--config", PIPELINE, "--output", str(corpus))
        split_out = base / "split.jsonl"
        split(capsys, corpus, split_out, seed=41)
        sequence(capsys, split_out, base / "task", "direction")
        outputs.append(base)
    one, two = outputs
    for rel in ("corpus.jsonl", "split.jsonl", "task/train.jsonl", "task/dev.jsonl", "task/test.jsonl"):
        assert (one / rel).read_bytes() == (two / rel).read_bytes()
