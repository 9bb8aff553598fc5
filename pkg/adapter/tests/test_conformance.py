"""Byte-level protocol conformance and behavioral equality with the
evaluator's built-in keyword baseline, exercised over the real subprocess
boundary."""
import json
import subprocess
import sys
import uuid
from pathlib import Path

import pytest

SCRIPT = Path(__file__).resolve().parents[1] / "reference_adapter.py"

KEYWORD_ARGS = [
    "--keywords", "positive=good,great",
    "--keywords", "negative=bad,awful",
    "--majority", "positive",
]


def spawn(extra_args=()):
    return subprocess.Popen(
        [sys.executable, str(SCRIPT), *KEYWORD_ARGS, *extra_args],
        stdin=subprocess.PIPE,
        stdout=subprocess.PIPE,
        text=True,
        bufsize=1,
    )


def roundtrip(proc, request: dict) -> dict:
    proc.stdin.write(json.dumps(request) + "\n")
    proc.stdin.flush()
    line = proc.stdout.readline()
    assert line.endswith("\n"), "response must be one full line"
    return json.loads(line)


def make_texts(n: int) -> list[str]:
    words = ["good", "bad", "great", "awful", "table", "GOOD", "goodness", "film"]
    texts = []
    for i in range(n):
        picked = [words[(i + k * 3) % len(words)] for k in range(1 + i % 5)]
        texts.append(" ".join(picked) + f" item {i}")
    return texts


def test_thousand_sample_stream_matches_builtin():
    from flint.models import KeywordModel
    from flint import Sample, Task, TextField

    texts = make_texts(1000)
    samples = [
        Sample(f"c{i}", Task.CLASSIFICATION, {"text": TextField.from_raw(t)}, "positive")
        for i, t in enumerate(texts)
    ]
    builtin = KeywordModel(
        {"positive": ["good", "great"], "negative": ["bad", "awful"]}, "positive"
    )
    expected, expected_scores = builtin.predict_with_scores(samples)

    proc = spawn()
    got, got_scores = [], []
    try:
        for start in range(0, 1000, 32):
            batch = texts[start : start + 32]
            request = {
                "id": str(uuid.uuid4()),
                "type": "predict",
                "task": "classification",
                "samples": [{"id": f"c{start + j}", "text": t} for j, t in enumerate(batch)],
            }
            response = roundtrip(proc, request)
            # protocol conformance: id echoed, counts match, no error
            assert response["id"] == request["id"]
            assert "error" not in response
            assert len(response["predictions"]) == len(batch)
            assert len(response["scores"]) == len(batch)
            got.extend(response["predictions"])
            got_scores.extend(response["scores"])
    finally:
        proc.stdin.close()
        proc.wait(timeout=10)
    assert got == expected
    # identical hit-count arithmetic on both sides: exact equality holds
    assert got_scores == expected_scores


def test_malformed_line_reports_error_and_continues():
    proc = spawn()
    try:
        proc.stdin.write("this is not json\n")
        proc.stdin.flush()
        response = json.loads(proc.stdout.readline())
        assert "error" in response

        ok = roundtrip(
            proc,
            {
                "id": "after",
                "type": "predict",
                "task": "classification",
                "samples": [{"id": "x", "text": "good"}],
            },
        )
        assert ok == {"id": "after", "predictions": ["positive"], "scores": [[0.0, 1.0]]}
    finally:
        proc.stdin.close()
        proc.wait(timeout=10)


def test_unknown_type_is_error_object():
    proc = spawn()
    try:
        response = roundtrip(proc, {"id": "q", "type": "paint", "samples": []})
        assert response["id"] == "q" and "error" in response
    finally:
        proc.stdin.close()
        proc.wait(timeout=10)


def test_score_and_rewrite():
    proc = spawn()
    try:
        response = roundtrip(
            proc,
            {
                "id": "s",
                "type": "score",
                "task": "classification",
                "samples": [{"id": "1", "text": "the cat sat"}, {"id": "2", "text": "sat cat the"}],
            },
        )
        assert len(response["scores"]) == 2
        assert all(isinstance(v, float) and v > 0 for v in response["scores"])

        response = roundtrip(
            proc,
            {
                "id": "r",
                "type": "rewrite",
                "task": "classification",
                "samples": [{"id": "1", "text": "leave me unchanged"}],
            },
        )
        assert response["rewrites"] == ["leave me unchanged"]
    finally:
        proc.stdin.close()
        proc.wait(timeout=10)


def test_eof_exits_cleanly():
    proc = spawn()
    proc.stdin.close()
    assert proc.wait(timeout=10) == 0


def test_case_insensitive_flag():
    proc = spawn(["--case-insensitive"])
    try:
        response = roundtrip(
            proc,
            {
                "id": "ci",
                "type": "predict",
                "task": "classification",
                "samples": [{"id": "x", "text": "BAD day"}],
            },
        )
        assert response["predictions"] == ["negative"]
    finally:
        proc.stdin.close()
        proc.wait(timeout=10)


def test_end_to_end_through_evaluator_cli(tmp_path):
    """The evaluator drives this adapter through its exec: model spec."""
    from flint.cli import main as cli_main
    from flint.core.dataset import save_dataset

    sys.path.insert(0, str(Path(__file__).resolve().parents[2] / "tests"))
    from corpora import toy_sa

    data_path = tmp_path / "sa.jsonl"
    save_dataset(toy_sa(40, positive=24), data_path)
    config = {
        "task": "classification",
        "dataset": {"path": str(data_path)},
        "transformations": ["WordCase:upper"],
        "model": f"exec:{sys.executable} {SCRIPT} "
        "--keywords positive=good --keywords negative=bad --majority positive",
    }
    config_path = tmp_path / "config.json"
    config_path.write_text(json.dumps(config), encoding="utf-8")
    out = tmp_path / "out"
    assert cli_main(["evaluate", "--config", str(config_path), "--out", str(out)]) == 0
    results = json.loads((out / "eval_results.json").read_text())
    row = results[0]
    assert row["original"]["accuracy"] == 1.0
    assert row["transformed"]["accuracy"] == 0.6
