"""Aspect-level sentiment transformations.

A clause is a maximal token run between {``.``, ``,``, ``;``, ``and``,
``but``}; each aspect lives in the clause containing its span start, and
its opinion tokens are the sentiment-lexicon hits inside that clause.
Opinion tokens preceded by a negator are left alone: reversing them under
negation would not flip the clause's polarity.
"""
from __future__ import annotations

from dataclasses import dataclass

from ..core.edits import InsertAt, ReplaceSpan, relabeled
from ..core.labels import SpanLabel
from ..core.sample import Sample, Task
from ..core.tokens import TextField, tokenize
from ..errors import ConfigError
from .base import Transformation, match_case

_SEPARATOR_TEXTS = {".", ",", ";"}
_CONJUNCTIONS = {"and": "but", "but": "and"}
_FLIP = {"positive": "negative", "negative": "positive"}


def _is_separator(text: str) -> bool:
    return text in _SEPARATOR_TEXTS or text.lower() in _CONJUNCTIONS


def clause_spans(field_: TextField) -> list[tuple[int, int]]:
    spans = []
    start = None
    for tok in field_.tokens:
        if _is_separator(tok.text):
            if start is not None:
                spans.append((start, tok.index))
                start = None
        elif start is None:
            start = tok.index
    if start is not None:
        spans.append((start, len(field_)))
    return spans


@dataclass(frozen=True)
class AspectContext:
    aspect: SpanLabel
    clause: tuple[int, int]
    opinions: tuple[int, ...]  # non-negated sentiment hits inside the clause


def _negated(texts: tuple[str, ...], idx: int) -> bool:
    if idx == 0:
        return False
    prev = texts[idx - 1].lower()
    return prev in ("not", "no", "never") or prev.endswith("n't")


def aspect_context(sample: Sample, aspect: SpanLabel, sentiment) -> AspectContext:
    field_ = sample.fields[aspect.field]
    texts = field_.texts
    clause = next(
        (c for c in clause_spans(field_) if c[0] <= aspect.start < c[1]),
        (aspect.start, aspect.end),
    )
    opinions = tuple(
        i
        for i in range(clause[0], clause[1])
        if texts[i].lower() in sentiment and not _negated(texts, i)
    )
    return AspectContext(aspect, clause, opinions)


def _target_index(sample: Sample) -> int:
    return int(sample.meta.get("target", 0))


def _flip_conjunction(texts, region: tuple[int, int]) -> ReplaceSpan | None:
    for i in range(*region):
        flip = _CONJUNCTIONS.get(texts[i].lower())
        if flip:
            return ReplaceSpan(i, i + 1, (match_case(texts[i], flip),))
    return None


class _AspectTransformation(Transformation):
    tasks = frozenset({Task.ABSA})

    def _target(self, sample: Sample) -> SpanLabel | None:
        idx = _target_index(sample)
        if not sample.label or idx >= len(sample.label):
            return None
        return sample.label[idx]


class RevTgt(_AspectTransformation):
    """Reverse the sentiment of the target aspect's clause and flip its
    polarity label; the conjunction to the neighboring clause flips too."""

    name = "RevTgt"

    def _build(self, sample, rng):
        target = self._target(sample)
        if target is None or target.tag not in _FLIP:
            return None
        ctx = aspect_context(sample, target, self.resources.sentiment)
        sites = [i for i in ctx.opinions if not (target.start <= i < target.end)]
        if not sites:
            return None
        field_ = sample.fields[target.field]
        texts = field_.texts
        edits = []
        for i in sites:
            reversal = self.resources.sentiment[texts[i].lower()].reversal
            edits.append(ReplaceSpan(i, i + 1, (match_case(texts[i], reversal),)))
        clauses = clause_spans(field_)
        pos = clauses.index(ctx.clause)
        conj = None
        if pos + 1 < len(clauses):
            conj = _flip_conjunction(texts, (ctx.clause[1], clauses[pos + 1][0]))
        if conj is None and pos > 0:
            conj = _flip_conjunction(texts, (clauses[pos - 1][1], ctx.clause[0]))
        if conj is not None:
            edits.append(conj)
        edits.sort(key=lambda e: e.start)
        idx = _target_index(sample)
        new_label = tuple(
            SpanLabel(lab.field, lab.start, lab.end, _FLIP[lab.tag] if k == idx else lab.tag)
            for k, lab in enumerate(sample.label)
        )
        trace = self._trace({target.field: edits}, relabeled("target polarity reversed"))
        return trace, new_label


class RevNon(_AspectTransformation):
    """Reverse sentiment in every non-target clause; all labels unchanged."""

    name = "RevNon"

    def _build(self, sample, rng):
        target = self._target(sample)
        if target is None:
            return None
        ctx = aspect_context(sample, target, self.resources.sentiment)
        field_ = sample.fields[target.field]
        texts = field_.texts
        clauses = clause_spans(field_)
        edits = []
        flipped_neighbors = False
        for clause in clauses:
            if clause == ctx.clause:
                continue
            sites = [
                i
                for i in range(clause[0], clause[1])
                if texts[i].lower() in self.resources.sentiment and not _negated(texts, i)
                and not any(lab.start <= i < lab.end for lab in sample.label)
            ]
            if not sites:
                continue
            for i in sites:
                reversal = self.resources.sentiment[texts[i].lower()].reversal
                edits.append(ReplaceSpan(i, i + 1, (match_case(texts[i], reversal),)))
            lo, hi = sorted((clauses.index(ctx.clause), clauses.index(clause)))
            if abs(lo - hi) == 1:
                conj = _flip_conjunction(texts, (clauses[lo][1], clauses[hi][0]))
                if conj is not None:
                    edits.append(conj)
                    flipped_neighbors = True
        if not edits:
            return None
        edits.sort(key=lambda e: e.start)
        return self._trace({target.field: edits}), None


class AddDiff(_AspectTransformation):
    """Append an opinion clause about an aspect absent from the sentence,
    with polarity different from the target's; the target label stays."""

    name = "AddDiff"

    def _build(self, sample, rng):
        if not self.resources.aspect_opinions:
            raise ConfigError("AddDiff needs a non-empty aspect-opinion snippet resource")
        target = self._target(sample)
        if target is None:
            return None
        field_ = sample.fields[target.field]
        texts = field_.texts
        present = {
            " ".join(texts[lab.start : lab.end]).lower() for lab in sample.label
        }
        present |= {t.lower() for t in texts}
        candidates = [s for s in self.resources.aspect_opinions if s.aspect.lower() not in present]
        if not candidates:
            return None
        snippet = rng.choice(candidates)
        if target.tag == "positive":
            clause = snippet.negative
        elif target.tag == "negative":
            clause = snippet.positive
        else:
            clause = rng.choice((snippet.positive, snippet.negative))
        clause_tokens = tuple(t.text for t in tokenize(clause))
        end = len(field_)
        while end > 0 and texts[end - 1] in (".", "!", "?"):
            end -= 1
        insert = (",", "but", *clause_tokens) if end > 0 else clause_tokens
        return self._trace({target.field: [InsertAt(end, insert)]}), None
