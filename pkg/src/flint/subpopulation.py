"""Attribute-based dataset slicing.

Percentile slices sort by the attribute with ties broken by original
index; slice size is ``max(1, round_half_up(p * n))``. ``top`` takes the
largest attribute values, ``bottom`` the smallest. Members are reported
in parent-dataset order, and slicing involves no randomness.

The builtin fluency scorer is a word-bigram model with add-one smoothing
fit on the evaluated dataset itself; the score of a sample is its
length-normalized negative log-probability (higher = less fluent).
"""
from __future__ import annotations

import json
import math
from collections import Counter
from dataclasses import dataclass
from pathlib import Path

from .core.dataset import Dataset
from .core.sample import Sample, Task
from .errors import ConfigError
from .resources import Resources

ATTRIBUTES = (
    "length",
    "lm_score",
    "phrase:negation",
    "phrase:question",
    "prejudice:man",
    "prejudice:woman",
)
ENDS = ("top", "bottom", "all-matching")

MAN_PRONOUNS = frozenset({"he", "him", "his", "himself"})
WOMAN_PRONOUNS = frozenset({"she", "her", "hers", "herself"})


@dataclass(frozen=True)
class SliceSpec:
    attribute: str
    end: str = "all-matching"
    p: float = 0.2

    def __post_init__(self) -> None:
        if self.attribute not in ATTRIBUTES:
            raise ConfigError(f"unknown slice attribute {self.attribute!r}")
        if self.end not in ENDS:
            raise ConfigError(f"unknown slice end {self.end!r}")
        if self.attribute in ("length", "lm_score"):
            if self.end == "all-matching":
                raise ConfigError(f"{self.attribute} slices need end=top or bottom")
            if not 0 < self.p <= 1:
                raise ConfigError(f"slice fraction must be in (0, 1], got {self.p}")

    def key(self) -> str:
        if self.attribute in ("length", "lm_score"):
            return f"{self.attribute}:{self.end}:{self.p}"
        return self.attribute


@dataclass(frozen=True)
class Slice:
    spec: SliceSpec
    member_ids: tuple[str, ...]  # parent order
    parent: str

    def __len__(self) -> int:
        return len(self.member_ids)


def _round_half_up(x: float) -> int:
    return math.floor(x + 0.5)


def slice_size(n: int, p: float) -> int:
    return max(1, _round_half_up(p * n))


def _token_count(sample: Sample) -> int:
    if sample.task is Task.PAIR:
        return len(sample.fields["premise"]) + len(sample.fields["hypothesis"])
    return len(sample.text)


def _percentile_slice(dataset: Dataset, scores: list[float], spec: SliceSpec) -> Slice:
    order = sorted(range(len(dataset)), key=lambda i: (scores[i], i))
    k = slice_size(len(dataset), spec.p)
    chosen = set(order[-k:]) if spec.end == "top" else set(order[:k])
    members = tuple(s.id for i, s in enumerate(dataset.samples) if i in chosen)
    return Slice(spec, members, dataset.name)


def slice_by_length(dataset: Dataset, end: str, p: float = 0.2) -> Slice:
    spec = SliceSpec("length", end, p)
    scores = [float(_token_count(s)) for s in dataset.samples]
    return _percentile_slice(dataset, scores, spec)


class BigramScorer:
    """Add-one-smoothed word bigram model fit on a dataset."""

    BOS = "<s>"
    EOS = "</s>"

    def __init__(self, dataset: Dataset):
        self.bigrams: Counter = Counter()
        self.unigrams: Counter = Counter()
        vocab: set[str] = {self.EOS}
        for sample in dataset:
            tokens = self._tokens(sample)
            vocab.update(tokens)
            seq = [self.BOS, *tokens, self.EOS]
            for a, b in zip(seq, seq[1:]):
                self.bigrams[(a, b)] += 1
                self.unigrams[a] += 1
        self.vocab_size = len(vocab)

    @staticmethod
    def _tokens(sample: Sample) -> list[str]:
        if sample.task is Task.PAIR:
            return [
                t.lower()
                for name in ("premise", "hypothesis")
                for t in sample.fields[name].texts
            ]
        return [t.lower() for t in sample.text.texts]

    def score(self, sample: Sample) -> float:
        """Length-normalized negative log-probability (natural log)."""
        tokens = self._tokens(sample)
        seq = [self.BOS, *tokens, self.EOS]
        total = 0.0
        for a, b in zip(seq, seq[1:]):
            p = (self.bigrams[(a, b)] + 1) / (self.unigrams[a] + self.vocab_size)
            total -= math.log(p)
        return total / (len(seq) - 1)


class AdapterScorer:
    """Fluency scoring delegated to a score-capable adapter."""

    def __init__(self, adapter):
        self.adapter = adapter

    def fit(self, dataset: Dataset) -> None:  # adapter models arrive pre-fit
        pass

    def score_all(self, dataset: Dataset) -> list[float]:
        texts = [" ".join(BigramScorer._tokens(s)) for s in dataset]
        return list(self.adapter.score(texts))


def slice_by_lm_score(dataset: Dataset, end: str, p: float = 0.2, scorer: str | object = "builtin") -> Slice:
    spec = SliceSpec("lm_score", end, p)
    if scorer == "builtin":
        model = BigramScorer(dataset)
        scores = [model.score(s) for s in dataset]
    elif hasattr(scorer, "score_all"):
        scores = list(scorer.score_all(dataset))
    else:
        raise ConfigError(f"unknown lm scorer {scorer!r}")
    return _percentile_slice(dataset, scores, spec)


def _any_token(sample: Sample, predicate) -> bool:
    return any(predicate(t.text) for f in sample.fields.values() for t in f.tokens)


def matches_negation(sample: Sample, negation_words) -> bool:
    words = frozenset(negation_words)
    return _any_token(sample, lambda t: t.lower() in words or t.lower().endswith("n't"))


def matches_question(sample: Sample, question_words) -> bool:
    words = frozenset(question_words)
    for field_ in sample.fields.values():
        if not field_.tokens:
            continue
        if field_.tokens[-1].text == "?":
            return True
        if field_.tokens[0].text.lower() in words:
            return True
    return False


def slice_by_phrase(dataset: Dataset, kind: str, resources: Resources | None = None) -> Slice:
    from .resources import bundled_resources

    resources = resources or bundled_resources()
    spec = SliceSpec(f"phrase:{kind}")
    if kind == "negation":
        member = lambda s: matches_negation(s, resources.negation_words)
    elif kind == "question":
        member = lambda s: matches_question(s, resources.question_words)
    else:
        raise ConfigError(f"unknown phrase slice {kind!r}")
    members = tuple(s.id for s in dataset if member(s))
    return Slice(spec, members, dataset.name)


def gender_of(sample: Sample) -> str | None:
    """'man'/'woman' by exclusive pronoun mention, None when neither/both."""
    has_man = _any_token(sample, lambda t: t.lower() in MAN_PRONOUNS)
    has_woman = _any_token(sample, lambda t: t.lower() in WOMAN_PRONOUNS)
    if has_man and not has_woman:
        return "man"
    if has_woman and not has_man:
        return "woman"
    return None


def slice_by_prejudice(dataset: Dataset, gender: str) -> Slice:
    if gender not in ("man", "woman"):
        raise ConfigError(f"unknown prejudice slice {gender!r}")
    spec = SliceSpec(f"prejudice:{gender}")
    members = tuple(s.id for s in dataset if gender_of(s) == gender)
    return Slice(spec, members, dataset.name)


def run_slice(dataset: Dataset, spec: SliceSpec, resources: Resources | None = None, adapter=None) -> Slice:
    if spec.attribute == "length":
        return slice_by_length(dataset, spec.end, spec.p)
    if spec.attribute == "lm_score":
        scorer = AdapterScorer(adapter) if adapter is not None else "builtin"
        return slice_by_lm_score(dataset, spec.end, spec.p, scorer)
    if spec.attribute.startswith("phrase:"):
        return slice_by_phrase(dataset, spec.attribute.split(":", 1)[1], resources)
    return slice_by_prejudice(dataset, spec.attribute.split(":", 1)[1])


def save_slice(slice_: Slice, path: str | Path) -> None:
    """Persist as JSONL: a spec header line, then one line per member id."""
    path = Path(path)
    with path.open("w", encoding="utf-8") as fh:
        header = {
            "spec": {
                "attribute": slice_.spec.attribute,
                "end": slice_.spec.end,
                "p": slice_.spec.p,
            },
            "parent": slice_.parent,
            "count": len(slice_.member_ids),
        }
        fh.write(json.dumps(header, ensure_ascii=False) + "\n")
        for member in slice_.member_ids:
            fh.write(json.dumps({"id": member}, ensure_ascii=False) + "\n")
