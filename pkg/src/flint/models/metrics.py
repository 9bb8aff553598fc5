"""Evaluation metrics: accuracy, macro-F1 and exact-span micro F1.

Macro-F1 averages per-class F1 over the classes present in gold only;
precision/recall terms with zero denominators count as 0. Span F1 uses
exact (boundary, type) matching on BIO tags, repairing stray ``I-`` tags
as span starts.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from ..core.labels import bio_decode


@dataclass(frozen=True)
class MetricValue:
    name: str
    value: float


def accuracy(gold: Sequence, predicted: Sequence) -> MetricValue:
    if len(gold) != len(predicted):
        raise ValueError(f"{len(gold)} gold items vs {len(predicted)} predictions")
    if not gold:
        return MetricValue("accuracy", 0.0)
    correct = sum(1 for g, p in zip(gold, predicted) if g == p)
    return MetricValue("accuracy", correct / len(gold))


def macro_f1(gold: Sequence[str], predicted: Sequence[str]) -> MetricValue:
    if len(gold) != len(predicted):
        raise ValueError(f"{len(gold)} gold items vs {len(predicted)} predictions")
    classes = sorted(set(gold))
    if not classes:
        return MetricValue("macro_f1", 0.0)
    total = 0.0
    for cls in classes:
        tp = sum(1 for g, p in zip(gold, predicted) if g == cls and p == cls)
        fp = sum(1 for g, p in zip(gold, predicted) if g != cls and p == cls)
        fn = sum(1 for g, p in zip(gold, predicted) if g == cls and p != cls)
        precision = tp / (tp + fp) if tp + fp else 0.0
        recall = tp / (tp + fn) if tp + fn else 0.0
        f1 = 2 * precision * recall / (precision + recall) if precision + recall else 0.0
        total += f1
    return MetricValue("macro_f1", total / len(classes))


def span_f1(gold: Sequence[Sequence[str]], predicted: Sequence[Sequence[str]]) -> MetricValue:
    """Micro-averaged exact span+type F1 over a corpus of BIO tag sequences."""
    if len(gold) != len(predicted):
        raise ValueError(f"{len(gold)} gold sequences vs {len(predicted)} predictions")
    tp = fp = fn = 0
    for gold_tags, pred_tags in zip(gold, predicted):
        gold_spans = set(bio_decode(tuple(gold_tags)))
        pred_spans = set(bio_decode(tuple(pred_tags)))
        tp += len(gold_spans & pred_spans)
        fp += len(pred_spans - gold_spans)
        fn += len(gold_spans - pred_spans)
    precision = tp / (tp + fp) if tp + fp else 0.0
    recall = tp / (tp + fn) if tp + fn else 0.0
    f1 = 2 * precision * recall / (precision + recall) if precision + recall else 0.0
    return MetricValue("span_f1", f1)


def token_accuracy(gold: Sequence[Sequence[str]], predicted: Sequence[Sequence[str]]) -> MetricValue:
    flat_gold = [t for seq in gold for t in seq]
    flat_pred = [t for seq in predicted for t in seq]
    return MetricValue("accuracy", accuracy(flat_gold, flat_pred).value)
