"""Transformation base class and shared helpers.

A transformation is a pure function of (sample, seed, params). It returns
transform outputs carrying the transformed sample plus the edit trace that
produced it, or raises :class:`NotApplicable` when the sample offers no
eligible site. Fixed inputs always produce identical outputs.

An eligible word is alphabetic, at least ``min_word_len`` characters long
and not frozen. At most ``ceil(word_ratio * n_eligible)`` eligible words
are perturbed (but always at least one).
"""
from __future__ import annotations

import math
import random
from dataclasses import dataclass, field as dc_field

from ..core.edits import Edit, EditTrace, LabelEdit, PRESERVING
from ..core.sample import Sample, Task, apply_trace
from ..core.tokens import TextField
from ..errors import NotApplicable, TaskError
from ..resources import Resources

ALL_TASKS = frozenset(Task)


@dataclass
class PerturbParams:
    word_ratio: float = 0.1
    max_edits_per_word: int = 1
    min_word_len: int = 3

    def __post_init__(self) -> None:
        if not 0 < self.word_ratio <= 1:
            raise ValueError(f"word_ratio must be in (0, 1], got {self.word_ratio}")


@dataclass
class TransformOutput:
    original_id: str | None
    transformed: Sample
    trace: EditTrace
    transform: str
    validator_scores: dict[str, float] = dc_field(default_factory=dict)
    original: Sample | None = None


def eligible_indices(field_: TextField, min_len: int = 3) -> list[int]:
    return [
        t.index
        for t in field_.tokens
        if t.index not in field_.frozen and t.text.isalpha() and len(t.text) >= min_len
    ]


def pick_limit(n_eligible: int, ratio: float) -> int:
    return max(1, math.ceil(ratio * n_eligible))


def match_case(template: str, word: str) -> str:
    if template.isupper() and len(template) > 1:
        return word.upper()
    if template[:1].isupper():
        return word[:1].upper() + word[1:]
    return word


class Transformation:
    """Base for per-sample transformations."""

    name: str = ""
    tasks: frozenset[Task] = ALL_TASKS
    label_edit: LabelEdit = PRESERVING

    def __init__(self, resources: Resources, params: PerturbParams | None = None):
        self.resources = resources
        self.params = params or PerturbParams()

    def key(self) -> str:
        """Registry name including parameters, e.g. ``WordCase:upper``."""
        return self.name

    def apply(self, sample: Sample, seed: int, max_outputs: int = 1) -> list[TransformOutput]:
        if sample.task not in self.tasks:
            raise TaskError(f"{self.key()} does not support task {sample.task.value}")
        rng = random.Random(seed)
        outputs: list[TransformOutput] = []
        seen: set[str] = set()
        for attempt in range(max_outputs * 4):
            built = self._build(sample, rng)
            if built is None:
                break
            trace, label = built
            variant = f"{sample.id}~{self.key()}~{len(outputs)}"
            transformed = apply_trace(sample, trace, new_id=variant)
            if label is not None:
                transformed = transformed.replace(label=label)
            fingerprint = "\x1f".join(
                transformed.fields[n].raw for n in sorted(transformed.fields)
            )
            if self._unchanged(sample, transformed):
                continue
            if fingerprint in seen:
                continue
            seen.add(fingerprint)
            outputs.append(
                TransformOutput(sample.id, transformed, trace, self.key(), original=sample)
            )
            if len(outputs) >= max_outputs:
                break
        if not outputs:
            raise NotApplicable(f"{self.key()}: no eligible site in sample {sample.id!r}")
        return outputs

    @staticmethod
    def _unchanged(original: Sample, transformed: Sample) -> bool:
        return all(
            transformed.fields[name].raw == field_.raw
            for name, field_ in original.fields.items()
        ) and original.label == transformed.label

    def _build(self, sample: Sample, rng: random.Random):
        """Return (trace, label override or None), or None when inapplicable.

        Called repeatedly with the same random stream to produce variants;
        a deterministic transform may return the same trace every time and
        the driver deduplicates.
        """
        raise NotImplementedError

    # -- shared helpers -------------------------------------------------

    def _trace(self, edits_by_field: dict[str, list[Edit]], label_edit: LabelEdit | None = None) -> EditTrace:
        cleaned = {name: tuple(edits) for name, edits in edits_by_field.items() if edits}
        return EditTrace(cleaned, label_edit or self.label_edit)

    def _eligible(self, sample: Sample) -> list[tuple[str, int]]:
        sites: list[tuple[str, int]] = []
        for name in sorted(sample.fields):
            for idx in eligible_indices(sample.fields[name], self.params.min_word_len):
                sites.append((name, idx))
        return sites

    def _choose_sites(
        self,
        rng: random.Random,
        candidates: list[tuple[str, int]],
        n_eligible: int,
    ) -> list[tuple[str, int]]:
        if not candidates:
            return []
        k = min(pick_limit(n_eligible, self.params.word_ratio), len(candidates))
        return sorted(rng.sample(candidates, k))


class DatasetTransformation(Transformation):
    """Transformations that consume a window of consecutive samples."""

    window: int = 2

    def apply_window(self, samples: list[Sample], seed: int) -> TransformOutput:
        raise NotImplementedError


class GeneratorTransformation(Transformation):
    """Transformations that generate fresh samples from templates."""

    def generate(self, count: int, seed: int) -> list[TransformOutput]:
        raise NotImplementedError
