"""Entity-focused transformations for sequence labeling with BIO tags."""
from __future__ import annotations

import random

from ..core.edits import EditTrace, InsertAt, ReplaceSpan, relabeled
from ..core.labels import bio_decode, is_bio
from ..core.sample import Sample, Task, apply_trace
from ..errors import ConfigError, NotApplicable
from .base import DatasetTransformation, Transformation, TransformOutput, pick_limit

_LETTERS = "abcdefghijklmnopqrstuvwxyz"


def _gold_spans(sample: Sample) -> list[tuple[int, int, str]]:
    if sample.task is not Task.SEQUENCE or not is_bio(sample.label):
        return []
    return bio_decode(sample.label)


class EntTypos(Transformation):
    """One inner-character typo inside each chosen entity span; tags unchanged."""

    name = "EntTypos"
    tasks = frozenset({Task.SEQUENCE})

    def _build(self, sample, rng):
        spans = _gold_spans(sample)
        texts = sample.text.texts
        eligible = [
            (s, e)
            for s, e, _ in spans
            if any(len(texts[i]) >= 3 and texts[i].isalpha() for i in range(s, e))
        ]
        if not eligible:
            return None
        k = min(pick_limit(len(spans), self.params.word_ratio), len(eligible))
        chosen = sorted(rng.sample(eligible, k))
        edits = []
        for s, e in chosen:
            sites = [i for i in range(s, e) if len(texts[i]) >= 3 and texts[i].isalpha()]
            idx = rng.choice(sites)
            word = texts[idx]
            new = self._typo(word, rng)
            if new != word:
                edits.append(ReplaceSpan(idx, idx + 1, (new,)))
        if not edits:
            return None
        return self._trace({"text": edits}), None

    @staticmethod
    def _typo(word: str, rng: random.Random) -> str:
        inner = list(range(1, len(word)))
        op = rng.choice(("insert", "delete", "swap", "replace"))
        if op == "insert":
            pos = rng.choice(inner)
            return word[:pos] + rng.choice(_LETTERS) + word[pos:]
        if op == "delete":
            pos = rng.choice(inner)
            return word[:pos] + word[pos + 1 :]
        if op == "swap":
            swappable = [i for i in inner if i + 1 < len(word) and word[i] != word[i + 1]]
            if swappable:
                pos = rng.choice(swappable)
                return word[:pos] + word[pos + 1] + word[pos] + word[pos + 2 :]
            op = "replace"
        pos = rng.choice(inner)
        repl = rng.choice([c for c in _LETTERS if c != word[pos].lower()])
        if word[pos].isupper():
            repl = repl.upper()
        return word[:pos] + repl + word[pos + 1 :]


class SwapLonger(Transformation):
    """Expand acronym entities to their full form; span widens, tag stays."""

    name = "SwapLonger"
    tasks = frozenset({Task.SEQUENCE})

    def _build(self, sample, rng):
        texts = sample.text.texts
        edits = []
        for s, e, _ in _gold_spans(sample):
            surface = " ".join(texts[s:e])
            expansion = self.resources.acronyms.get(surface)
            if expansion:
                edits.append(ReplaceSpan(s, e, expansion))
        if not edits:
            return None
        return self._trace({"text": edits}), None


class OOVEntity(Transformation):
    """Replace an entity with an out-of-vocabulary variant.

    Either an internal case flip of the original surface or a draw from the
    held-out gazetteer partition that ships disjoint from the main lists.
    """

    name = "OOV"
    tasks = frozenset({Task.SEQUENCE})

    def _build(self, sample, rng):
        gaz = self.resources.gazetteer
        texts = sample.text.texts
        spans = _gold_spans(sample)
        if not spans:
            return None
        s, e, cat = rng.choice(spans)
        strategies = ["flip", "pool"] if gaz.surfaces(cat, "oov") else ["flip"]
        strategy = rng.choice(strategies)
        if strategy == "pool":
            options = [x for x in gaz.surfaces(cat, "oov") if x != " ".join(texts[s:e])]
            if options:
                repl = tuple(rng.choice(options).split())
                return self._trace({"text": [ReplaceSpan(s, e, repl)]}), None
        flipped = self._case_flip(texts[s:e], rng, gaz)
        if flipped is None:
            return None
        return self._trace({"text": [ReplaceSpan(s, e, flipped)]}), None

    @staticmethod
    def _case_flip(words: tuple[str, ...], rng: random.Random, gaz) -> tuple[str, ...] | None:
        sites = [
            (w, i)
            for w, word in enumerate(words)
            for i in range(1, len(word))
            if word[i].isalpha()
        ]
        if not sites:
            return None
        rng.shuffle(sites)
        for w, i in sites:
            word = words[w]
            c = word[i]
            flip = c.lower() if c.isupper() else c.upper()
            if flip == c:
                continue
            candidate = list(words)
            candidate[w] = word[:i] + flip + word[i + 1 :]
            surface = " ".join(candidate)
            if gaz.category_of(surface) is None:
                return tuple(candidate)
        return None


class CrossCategory(Transformation):
    """Swap an entity surface across categories while the gold tag keeps the
    original category; the trace records the deliberate mismatch."""

    name = "CrossCategory"
    tasks = frozenset({Task.SEQUENCE})

    def _build(self, sample, rng):
        gaz = self.resources.gazetteer
        if len([c for c in gaz.categories if gaz.surfaces(c)]) < 2:
            raise ConfigError("CrossCategory needs a gazetteer with at least two categories")
        spans = [(s, e, cat) for s, e, cat in _gold_spans(sample)]
        if not spans:
            return None
        s, e, cat = rng.choice(spans)
        others = [c for c in gaz.categories if c != cat and gaz.surfaces(c)]
        if not others:
            return None
        other = rng.choice(others)
        repl = tuple(rng.choice(gaz.surfaces(other)).split())
        trace = self._trace(
            {"text": [ReplaceSpan(s, e, repl)]},
            relabeled("surface-category mismatch"),
        )
        return trace, None


class ConcatSent(DatasetTransformation):
    """Concatenate k consecutive samples into one; tag sequences concatenated."""

    name = "ConcatSent"
    tasks = frozenset({Task.SEQUENCE})

    def __init__(self, resources, params=None, k: int = 2):
        super().__init__(resources, params)
        if not 2 <= k <= 4:
            raise ConfigError(f"ConcatSent window must be 2..4, got {k}")
        self.window = k

    def key(self):
        return self.name if self.window == 2 else f"{self.name}:{self.window}"

    def apply_window(self, samples: list[Sample], seed: int) -> TransformOutput:
        if len(samples) < 2:
            raise NotApplicable("ConcatSent needs at least two consecutive samples")
        base = samples[0]
        extra_texts: list[str] = []
        extra_tags: list[str] = []
        for s in samples[1:]:
            extra_texts.extend(s.text.texts)
            extra_tags.extend(s.label)
        edit = InsertAt(len(base.text), tuple(extra_texts), tuple(extra_tags))
        trace = EditTrace({"text": (edit,)})
        new_id = "+".join(s.id for s in samples)
        transformed = apply_trace(base, trace, new_id=new_id)
        return TransformOutput(base.id, transformed, trace, self.key(), original=base)
