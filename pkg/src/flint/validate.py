"""Intrinsic quality metrics over (original, transformed) pairs.

BLEU here is sentence BLEU with n-gram orders up to 4, the standard brevity
penalty, and add-one smoothing applied to both numerator and denominator
for orders n >= 2:

    p_1 = m_1 / t_1
    p_n = (m_n + 1) / (t_n + 1)        for n in {2, 3, 4}
    BP  = 1 if c > r else exp(1 - r/c)
    BLEU = BP * exp(mean(log p_n over orders with t_n > 0 or n >= 2))

where m_n is the clipped n-gram match count, t_n the candidate n-gram
count, c the candidate length and r the reference length. Orders the
candidate is too short to populate contribute (0+1)/(0+1) = 1, which keeps
bleu(x, x) = 1 for any non-empty x.
"""
from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field
from typing import Sequence

from .errors import ConfigError


def edit_distance(a: str, b: str) -> int:
    """Levenshtein distance with unit costs at character granularity."""
    if len(a) < len(b):
        a, b = b, a
    previous = list(range(len(b) + 1))
    for i, ca in enumerate(a, start=1):
        current = [i]
        for j, cb in enumerate(b, start=1):
            current.append(
                min(previous[j] + 1, current[j - 1] + 1, previous[j - 1] + (ca != cb))
            )
        previous = current
    return previous[-1]


def lcs_length(a: Sequence[str], b: Sequence[str]) -> int:
    if not a or not b:
        return 0
    previous = [0] * (len(b) + 1)
    for x in a:
        current = [0]
        for j, y in enumerate(b, start=1):
            current.append(previous[j - 1] + 1 if x == y else max(previous[j], current[j - 1]))
        previous = current
    return previous[-1]


def replacement_ratio(original: Sequence[str], transformed: Sequence[str]) -> float:
    """1 - |LCS| / max(lengths), at token granularity."""
    if not original and not transformed:
        return 0.0
    return 1.0 - lcs_length(original, transformed) / max(len(original), len(transformed))


def _ngrams(tokens: Sequence[str], n: int) -> Counter:
    return Counter(tuple(tokens[i : i + n]) for i in range(len(tokens) - n + 1))


def bleu(candidate: Sequence[str], reference: Sequence[str]) -> float:
    """Sentence BLEU in [0, 1]; see the module docstring for the formula."""
    if not candidate or not reference:
        return 0.0
    log_sum = 0.0
    for n in range(1, 5):
        cand = _ngrams(candidate, n)
        ref = _ngrams(reference, n)
        matches = sum(min(count, ref[gram]) for gram, count in cand.items())
        total = sum(cand.values())
        if n == 1:
            if matches == 0:
                return 0.0
            log_sum += math.log(matches / total)
        else:
            log_sum += math.log((matches + 1) / (total + 1))
    c, r = len(candidate), len(reference)
    bp = 1.0 if c >= r else math.exp(1 - r / c)
    return bp * math.exp(log_sum / 4)


@dataclass
class Rejection:
    sample_id: str
    metric: str
    value: float
    threshold: float

    def to_record(self) -> dict:
        return {
            "id": self.sample_id,
            "metric": self.metric,
            "value": self.value,
            "threshold": self.threshold,
        }


@dataclass
class FilterResult:
    kept: list = field(default_factory=list)
    rejections: list[Rejection] = field(default_factory=list)


def score_output(output) -> dict[str, float]:
    """Intrinsic metric scores for one transform output, keyed by metric name."""
    scores: dict[str, float] = {}
    original = output.original
    transformed = output.transformed
    if original is None:
        return scores
    for name in original.fields:
        orig_field = original.fields[name]
        trans_field = transformed.fields.get(name)
        if trans_field is None:
            continue
        prefix = "" if name == "text" else f"{name}_"
        scores[f"{prefix}edit_distance"] = float(edit_distance(orig_field.raw, trans_field.raw))
        scores[f"{prefix}replacement_ratio"] = replacement_ratio(
            orig_field.texts, trans_field.texts
        )
        scores[f"{prefix}bleu"] = bleu(trans_field.texts, orig_field.texts)
    return scores


def filter_outputs(outputs, thresholds: dict | None, adapter=None) -> FilterResult:
    """Keep outputs within thresholds; log every rejection with its metric.

    ``thresholds`` keys: ``max_replacement_ratio`` (default 0.4 when the
    dict is given, otherwise no filtering), ``max_perplexity`` and
    ``min_similarity`` which require a score-capable adapter.
    """
    result = FilterResult()
    if thresholds is None:
        result.kept = list(outputs)
        return result
    max_ratio = thresholds.get("max_replacement_ratio", 0.4)
    needs_adapter = [k for k in ("max_perplexity", "min_similarity") if k in thresholds]
    if needs_adapter and adapter is None:
        raise ConfigError(
            f"thresholds {needs_adapter} require a configured score adapter"
        )
    for output in outputs:
        scores = dict(output.validator_scores) or score_output(output)
        output.validator_scores.update(scores)
        ratios = [v for k, v in scores.items() if k.endswith("replacement_ratio")]
        worst = max(ratios) if ratios else 0.0
        if worst > max_ratio:
            result.rejections.append(
                Rejection(output.transformed.id, "replacement_ratio", worst, max_ratio)
            )
            continue
        if needs_adapter:
            text = transformed_text(output)
            value = adapter.score([text])[0]
            output.validator_scores["adapter_score"] = value
            if "max_perplexity" in thresholds and value > thresholds["max_perplexity"]:
                result.rejections.append(
                    Rejection(output.transformed.id, "perplexity", value, thresholds["max_perplexity"])
                )
                continue
            if "min_similarity" in thresholds and value < thresholds["min_similarity"]:
                result.rejections.append(
                    Rejection(output.transformed.id, "similarity", value, thresholds["min_similarity"])
                )
                continue
        result.kept.append(output)
    return result


def transformed_text(output) -> str:
    sample = output.transformed
    return " ".join(sample.fields[name].raw for name in sorted(sample.fields))
