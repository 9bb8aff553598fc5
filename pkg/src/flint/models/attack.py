"""Greedy word-substitution attack against a score-exposing classifier.

Word importance is the drop in the originally-predicted class's score when
the word is deleted (one query per word). Words are then tried in
descending importance, each word's synonym candidates in lexicon order,
and the first prediction flip wins. Classification tasks only.
"""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from ..core.edits import EditTrace, ReplaceSpan
from ..core.sample import Sample, Task, apply_trace
from ..errors import NoScoreSupport, TaskError
from ..transforms.base import eligible_indices, match_case


@dataclass
class AttackRecord:
    sample_id: str
    success: bool
    queries: int
    words_changed: int
    edits: list[tuple[int, str, str]] = dc_field(default_factory=list)
    original_prediction: str | None = None
    final_prediction: str | None = None
    perturbed: Sample | None = None

    def to_record(self) -> dict:
        return {
            "id": self.sample_id,
            "success": self.success,
            "queries": self.queries,
            "words_changed": self.words_changed,
            "edits": [list(e) for e in self.edits],
            "original_prediction": self.original_prediction,
            "final_prediction": self.final_prediction,
        }


def _with_replacement(sample: Sample, index: int, replacement: str) -> Sample:
    trace = EditTrace({"text": (ReplaceSpan(index, index + 1, (replacement,)),)})
    return apply_trace(sample, trace)


def _without_token(sample: Sample, index: int) -> Sample:
    texts = sample.text.texts
    reduced = texts[:index] + texts[index + 1 :]
    from ..core.tokens import TextField

    fields = dict(sample.fields)
    fields["text"] = TextField.from_texts(reduced)
    return Sample(sample.id, sample.task, fields, sample.label, dict(sample.meta))


def greedy_attack(
    model,
    sample: Sample,
    synonyms: dict,
    budget: int | None = None,
    min_word_len: int = 3,
) -> AttackRecord:
    if sample.task is not Task.CLASSIFICATION:
        raise TaskError("greedy_attack supports classification tasks only")

    words = eligible_indices(sample.text, min_word_len)
    candidates = {
        i: synonyms.get(sample.text.tokens[i].text.lower(), ())
        for i in words
    }
    total_candidates = sum(len(c) for c in candidates.values())
    if budget is None:
        budget = 2 * len(words) + total_candidates

    record = AttackRecord(sample.id, False, 0, 0)

    def query(s: Sample):
        record.queries += 1
        preds, scores = model.predict_with_scores([s])
        if scores is None:
            raise NoScoreSupport("greedy_attack needs per-class scores from the model")
        return preds[0], scores[0]

    if record.queries >= budget:
        return record

    original_pred, original_scores = query(sample)
    record.original_prediction = original_pred
    if original_pred != sample.label:
        record.success = True
        record.final_prediction = original_pred
        record.perturbed = sample
        return record

    pred_index = max(range(len(original_scores)), key=lambda i: original_scores[i])

    importance: list[tuple[float, int]] = []
    for i in words:
        if record.queries >= budget:
            return record
        _, scores = query(_without_token(sample, i))
        drop = original_scores[pred_index] - (
            scores[pred_index] if pred_index < len(scores) else 0.0
        )
        importance.append((-drop, i))
    importance.sort()

    for _, i in importance:
        token = sample.text.tokens[i].text
        for candidate in candidates[i]:
            replacement = match_case(token, candidate)
            if replacement == token:
                continue
            if record.queries >= budget:
                return record
            variant = _with_replacement(sample, i, replacement)
            pred, _ = query(variant)
            if pred != original_pred:
                record.success = True
                record.words_changed = 1
                record.edits = [(i, token, replacement)]
                record.final_prediction = pred
                record.perturbed = variant
                return record
    return record


def replay(model, sample: Sample, record: AttackRecord) -> bool:
    """Re-apply the recorded edits and confirm the flip reproduces."""
    if not record.success:
        return False
    variant = sample
    for index, _, replacement in record.edits:
        variant = _with_replacement(variant, index, replacement)
    preds, _ = model.predict_with_scores([variant])
    return preds[0] == record.final_prediction and preds[0] != record.original_prediction
