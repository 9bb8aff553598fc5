"""Paired original/transformed evaluation.

For each transform, metrics are computed on the original samples that
produced outputs and on the transformed outputs themselves, so the two
columns of every result row describe the same underlying subset. Outputs
without an original (template-generated data) report transformed metrics
only.
"""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from ..core.dataset import Dataset
from ..core.labels import is_bio
from ..core.sample import Sample, Task
from ..errors import AdapterError, ConfigError
from .metrics import accuracy, macro_f1, span_f1, token_accuracy


@dataclass
class EvalResult:
    transform: str
    original: dict[str, float] | None
    transformed: dict[str, float]
    degradation: dict[str, float] | None
    n_original: int
    n_transformed: int

    def to_record(self) -> dict:
        return {
            "transform": self.transform,
            "original": self.original,
            "transformed": self.transformed,
            "degradation": self.degradation,
            "n_original": self.n_original,
            "n_transformed": self.n_transformed,
        }

    @classmethod
    def from_record(cls, obj: dict) -> "EvalResult":
        return cls(
            obj["transform"],
            obj.get("original"),
            obj["transformed"],
            obj.get("degradation"),
            obj.get("n_original", 0),
            obj.get("n_transformed", 0),
        )


def gold_of(sample: Sample):
    if sample.task is Task.SEQUENCE:
        return list(sample.label)
    if sample.task is Task.ABSA:
        target = int(sample.meta.get("target", 0))
        return sample.label[target].tag if sample.label else "neutral"
    return sample.label


def compute_metrics(samples: list[Sample], predictions: list) -> dict[str, float]:
    if not samples:
        return {}
    gold = [gold_of(s) for s in samples]
    task = samples[0].task
    if task is Task.SEQUENCE:
        if all(is_bio(tuple(g)) for g in gold):
            return {"span_f1": span_f1(gold, predictions).value}
        return {"accuracy": token_accuracy(gold, predictions).value}
    return {
        "accuracy": accuracy(gold, predictions).value,
        "macro_f1": macro_f1(gold, predictions).value,
    }


def _predict(model, samples: list[Sample], transform: str) -> list:
    try:
        return model.predict_with_scores(samples)[0]
    except AdapterError as exc:
        raise type(exc)(f"while evaluating transform {transform!r}: {exc}") from exc


def evaluate(
    model,
    dataset: Dataset,
    transformed: dict[str, list],
) -> list[EvalResult]:
    """Evaluate ``model`` on each transform's paired original/transformed sets.

    ``transformed`` maps transform name to a list of outputs exposing
    ``original_id`` and ``transformed`` (a Sample).
    """
    by_id = {s.id: s for s in dataset}
    results: list[EvalResult] = []
    for name in sorted(transformed):
        outputs = transformed[name]
        if not outputs:
            continue
        trans_samples = [o.transformed for o in outputs]
        source_ids = []
        for o in outputs:
            if o.original_id is not None and o.original_id in by_id:
                if o.original_id not in source_ids:
                    source_ids.append(o.original_id)
        originals = [by_id[i] for i in source_ids]
        trans_metrics = compute_metrics(trans_samples, _predict(model, trans_samples, name))
        if originals:
            orig_metrics = compute_metrics(originals, _predict(model, originals, name))
            degradation = {
                k: orig_metrics[k] - trans_metrics.get(k, 0.0) for k in orig_metrics
            }
        else:
            orig_metrics, degradation = None, None
        results.append(
            EvalResult(
                name,
                orig_metrics,
                trans_metrics,
                degradation,
                len(originals),
                len(trans_samples),
            )
        )
    if not results:
        raise ConfigError("no transformed outputs to evaluate")
    return results
