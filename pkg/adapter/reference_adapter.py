#!/usr/bin/env python3
"""Reference external-model process for the flint wire protocol.

Demonstrates how a real model plugs into the evaluator: a line-delimited
JSON loop over stdin/stdout, one response per request, never crashing on
bad input. Deliberately self-contained (stdlib only) so it documents the
protocol boundary rather than a model.

Supported request types:

* ``predict``  -- keyword classification, identical in rule to the
  evaluator's built-in keyword baseline: a hit is a regex match of the
  keyword with no adjacent ASCII alphanumerics, exact case unless
  ``--case-insensitive``; most hits wins, ties go to the majority class;
  scores are hit counts normalized to sum one (majority scores 1 when
  nothing hits). Class order in score vectors is sorted class name.
* ``score``    -- length-normalized negative log-probability under an
  add-one-smoothed word bigram model fit on the request's own texts.
* ``rewrite``  -- identity.

Usage:
    reference_adapter.py --keywords positive=good,great \\
                         --keywords negative=bad --majority positive
"""
from __future__ import annotations

import argparse
import json
import math
import re
import sys


def parse_args(argv=None):
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument(
        "--keywords",
        action="append",
        default=[],
        metavar="CLASS=WORD[,WORD...]",
        help="keyword list for one class; repeat per class (empty list allowed: CLASS=)",
    )
    parser.add_argument("--majority", required=True, help="tie-break / fallback class")
    parser.add_argument("--case-insensitive", action="store_true")
    return parser.parse_args(argv)


def build_classes(specs: list[str]) -> dict[str, list[str]]:
    classes: dict[str, list[str]] = {}
    for spec in specs:
        name, _, words = spec.partition("=")
        classes[name] = [w for w in words.split(",") if w]
    return classes


def keyword_hits(text: str, keyword: str, case_sensitive: bool) -> int:
    if not case_sensitive:
        text, keyword = text.lower(), keyword.lower()
    pattern = r"(?<![A-Za-z0-9])" + re.escape(keyword) + r"(?![A-Za-z0-9])"
    return len(re.findall(pattern, text))


def sample_text(sample: dict) -> str:
    if "premise" in sample or "hypothesis" in sample:
        return f"{sample.get('premise', '')} {sample.get('hypothesis', '')}".strip()
    if "tokens" in sample:
        return " ".join(sample["tokens"])
    return sample.get("text", "")


class KeywordClassifier:
    def __init__(self, classes: dict[str, list[str]], majority: str, case_sensitive: bool):
        if majority not in classes:
            raise SystemExit(f"majority class {majority!r} missing from --keywords")
        self.classes = classes
        self.order = sorted(classes)
        self.majority = majority
        self.case_sensitive = case_sensitive

    def predict(self, samples: list[dict]) -> tuple[list[str], list[list[float]]]:
        predictions, scores = [], []
        for sample in samples:
            text = sample_text(sample)
            hits = [
                sum(keyword_hits(text, kw, self.case_sensitive) for kw in self.classes[c])
                for c in self.order
            ]
            total = sum(hits)
            if total == 0:
                predictions.append(self.majority)
                scores.append([1.0 if c == self.majority else 0.0 for c in self.order])
                continue
            best = max(hits)
            winners = [c for c, h in zip(self.order, hits) if h == best]
            predictions.append(winners[0] if len(winners) == 1 else self.majority)
            scores.append([h / total for h in hits])
        return predictions, scores


def bigram_scores(texts: list[str]) -> list[float]:
    """Fit an add-one-smoothed word bigram model on the batch, then score
    each text as its length-normalized negative log-probability."""
    bos, eos = "<s>", "</s>"
    bigrams: dict[tuple[str, str], int] = {}
    firsts: dict[str, int] = {}
    vocab = {eos}
    tokenized = [t.lower().split() for t in texts]
    for tokens in tokenized:
        vocab.update(tokens)
        seq = [bos, *tokens, eos]
        for a, b in zip(seq, seq[1:]):
            bigrams[(a, b)] = bigrams.get((a, b), 0) + 1
            firsts[a] = firsts.get(a, 0) + 1
    v = len(vocab)
    out = []
    for tokens in tokenized:
        seq = [bos, *tokens, eos]
        total = 0.0
        for a, b in zip(seq, seq[1:]):
            total -= math.log((bigrams.get((a, b), 0) + 1) / (firsts.get(a, 0) + v))
        out.append(total / (len(seq) - 1))
    return out


def handle(request: dict, classifier: KeywordClassifier) -> dict:
    rid = request.get("id")
    kind = request.get("type")
    samples = request.get("samples")
    if not isinstance(samples, list):
        return {"id": rid, "error": "request needs a samples list"}
    if kind == "predict":
        predictions, scores = classifier.predict(samples)
        return {"id": rid, "predictions": predictions, "scores": scores}
    if kind == "score":
        return {"id": rid, "scores": bigram_scores([sample_text(s) for s in samples])}
    if kind == "rewrite":
        return {"id": rid, "rewrites": [sample_text(s) for s in samples]}
    return {"id": rid, "error": f"unknown request type {kind!r}"}


def serve(stdin, stdout, classifier: KeywordClassifier) -> None:
    for line in stdin:
        line = line.strip()
        if not line:
            continue
        try:
            request = json.loads(line)
            if not isinstance(request, dict):
                raise ValueError("request must be a JSON object")
        except (json.JSONDecodeError, ValueError) as exc:
            response = {"id": None, "error": f"malformed request line: {exc}"}
        else:
            try:
                response = handle(request, classifier)
            except Exception as exc:  # never crash the loop
                response = {"id": request.get("id"), "error": f"internal error: {exc}"}
        stdout.write(json.dumps(response, ensure_ascii=False) + "\n")
        stdout.flush()


def main(argv=None) -> int:
    args = parse_args(argv)
    classifier = KeywordClassifier(
        build_classes(args.keywords), args.majority, not args.case_insensitive
    )
    serve(sys.stdin, sys.stdout, classifier)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
