"""Task-typed samples and trace application.

A sample decomposes one datum into named text fields of aligned tokens.
The task determines the label form:

* classification and pair-classification: a class label string;
* sequence-labeling: one tag per token of the ``text`` field;
* aspect-sentiment: span labels whose tag is the aspect polarity.
"""
from __future__ import annotations

import dataclasses
from dataclasses import dataclass, field as dc_field
from enum import Enum
from typing import Any, Mapping

from ..errors import TaskError
from .edits import EditPlan, EditTrace, apply_token_edits
from .labels import SpanLabel, remap_span_labels, remap_tags
from .tokens import TextField

NLI_LABELS = ("entailment", "neutral", "contradiction")
POLARITIES = ("positive", "negative", "neutral")


class Task(str, Enum):
    CLASSIFICATION = "classification"
    PAIR = "pair-classification"
    SEQUENCE = "sequence-labeling"
    ABSA = "aspect-sentiment"


def required_fields(task: Task) -> tuple[str, ...]:
    return ("premise", "hypothesis") if task is Task.PAIR else ("text",)


@dataclass(frozen=True)
class Sample:
    id: str
    task: Task
    fields: Mapping[str, TextField]
    label: Any
    meta: Mapping[str, str] = dc_field(default_factory=dict)

    def __post_init__(self) -> None:
        for name in required_fields(self.task):
            if name not in self.fields:
                raise TaskError(f"sample {self.id!r}: task {self.task.value} needs field {name!r}")
        if self.task in (Task.CLASSIFICATION, Task.PAIR):
            if not isinstance(self.label, str):
                raise TaskError(f"sample {self.id!r}: class label must be a string")
            if self.task is Task.PAIR and self.label not in NLI_LABELS:
                raise TaskError(f"sample {self.id!r}: label {self.label!r} not in {NLI_LABELS}")
        elif self.task is Task.SEQUENCE:
            tags = self.label
            if not isinstance(tags, tuple) or not all(isinstance(t, str) for t in tags):
                raise TaskError(f"sample {self.id!r}: tag sequence must be a tuple of strings")
            if len(tags) != len(self.fields["text"]):
                raise TaskError(
                    f"sample {self.id!r}: {len(tags)} tags for "
                    f"{len(self.fields['text'])} tokens"
                )
        elif self.task is Task.ABSA:
            if not isinstance(self.label, tuple):
                raise TaskError(f"sample {self.id!r}: aspect labels must be a tuple")
            for lab in self.label:
                if not isinstance(lab, SpanLabel):
                    raise TaskError(f"sample {self.id!r}: aspect labels must be SpanLabels")
                if lab.field not in self.fields:
                    raise TaskError(f"sample {self.id!r}: span on unknown field {lab.field!r}")
                if lab.end > len(self.fields[lab.field]):
                    raise TaskError(f"sample {self.id!r}: span {lab} exceeds field length")
                if lab.tag not in POLARITIES:
                    raise TaskError(f"sample {self.id!r}: polarity {lab.tag!r} unknown")

    def field(self, name: str) -> TextField:
        return self.fields[name]

    @property
    def text(self) -> TextField:
        return self.fields["text"]

    def replace(self, **changes: Any) -> "Sample":
        return dataclasses.replace(self, **changes)


def _plans_for(sample: Sample, trace: EditTrace) -> dict[str, EditPlan]:
    plans: dict[str, EditPlan] = {}
    for name, fld in sample.fields.items():
        edits = trace.edits_for(name)
        if edits:
            plans[name] = apply_token_edits(fld.texts, edits)
    return plans


def remap_labels(sample: Sample, trace: EditTrace, *, new_id: str | None = None) -> Sample:
    """Apply ``trace`` to ``sample``: transformed fields plus remapped labels.

    Span labels and tag sequences travel through the trace's index map;
    class labels pass through unchanged (relabeling transforms overwrite
    them afterwards and declare it in ``trace.label_edit``).
    """
    plans = _plans_for(sample, trace)
    preserving = trace.label_edit.preserving

    new_fields: dict[str, TextField] = {}
    for name, fld in sample.fields.items():
        plan = plans.get(name)
        if plan is None:
            new_fields[name] = fld
            continue
        frozen = frozenset(
            plan.index_map[i] for i in fld.frozen if plan.index_map[i] is not None
        )
        new_fields[name] = TextField.from_texts(plan.new_texts, frozen)

    label = sample.label
    if sample.task is Task.SEQUENCE and "text" in plans:
        label = remap_tags(sample.label, plans["text"], preserving)
    elif sample.task is Task.ABSA:
        label = remap_span_labels(sample.label, plans, preserving)

    return Sample(new_id or sample.id, sample.task, new_fields, label, dict(sample.meta))


# remap_labels performs the full trace application; the alias names the
# whole-sample operation where call sites read better that way.
apply_trace = remap_labels
