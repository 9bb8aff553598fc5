"""Premise/hypothesis transformations for natural language inference.

Generated non-entailed overlap pairs use ``neutral`` as the non-entailment
label so they stay within the pair-classification label set.
"""
from __future__ import annotations

import random

from ..core.edits import EditTrace, InsertAt, ReplaceSpan, relabeled
from ..core.sample import Sample, Task
from ..core.tokens import TextField, tokenize
from .base import GeneratorTransformation, Transformation, TransformOutput, match_case


class SwapAntNLI(Transformation):
    """For an entailment pair, swap a shared content word in the hypothesis
    for its antonym; the new label is contradiction."""

    name = "SwapAnt-NLI"
    tasks = frozenset({Task.PAIR})

    def _build(self, sample, rng):
        if sample.label != "entailment":
            return None
        premise = {t.lower() for t in sample.fields["premise"].texts}
        hyp = sample.fields["hypothesis"]
        shared = sorted(
            {
                tok.text.lower()
                for tok in hyp.tokens
                if tok.text.isalpha()
                and len(tok.text) >= self.params.min_word_len
                and tok.text.lower() in premise
                and tok.text.lower() in self.resources.antonyms
                and tok.index not in hyp.frozen
            }
        )
        if not shared:
            return None
        word = rng.choice(shared)
        antonym = self.resources.antonyms[word][0]
        edits = [
            ReplaceSpan(tok.index, tok.index + 1, (match_case(tok.text, antonym),))
            for tok in hyp.tokens
            if tok.text.lower() == word
        ]
        trace = self._trace({"hypothesis": edits}, relabeled("antonym contradicts premise"))
        return trace, "contradiction"


class NumWord(Transformation):
    """For an entailment pair whose hypothesis repeats a premise numeral,
    shift the hypothesis numeral; the new label is contradiction."""

    name = "NumWord"
    tasks = frozenset({Task.PAIR})

    def _build(self, sample, rng):
        if sample.label != "entailment":
            return None
        premise_nums = {t for t in sample.fields["premise"].texts if t.isdigit()}
        hyp = sample.fields["hypothesis"]
        shared = sorted(
            {
                tok.text
                for tok in hyp.tokens
                if tok.text.isdigit() and tok.text in premise_nums and tok.index not in hyp.frozen
            }
        )
        if not shared:
            return None
        numeral = rng.choice(shared)
        digits = len(numeral)
        low = 0 if digits == 1 else 10 ** (digits - 1)
        high = 10**digits - 1
        while True:
            new = str(rng.randint(low, high))
            if new != numeral:
                break
        edits = [
            ReplaceSpan(tok.index, tok.index + 1, (new,))
            for tok in hyp.tokens
            if tok.text == numeral
        ]
        trace = self._trace({"hypothesis": edits}, relabeled("numeral contradicts premise"))
        return trace, "contradiction"


class AddSent(Transformation):
    """Append an irrelevant corpus sentence to the premise; label unchanged."""

    name = "AddSent"
    tasks = frozenset({Task.PAIR})

    def _build(self, sample, rng):
        hypothesis = sample.fields["hypothesis"].raw.lower()
        candidates = [
            s
            for s in self.resources.irrelevant
            if hypothesis not in s.lower() and s.lower() not in hypothesis
        ]
        if not candidates:
            return None
        sentence = rng.choice(candidates)
        texts = tuple(t.text for t in tokenize(sentence))
        n = len(sample.fields["premise"])
        return self._trace({"premise": [InsertAt(n, texts)]}), None


_AGENTS = (
    "judges", "actors", "lawyers", "doctors", "professors",
    "managers", "authors", "senators", "artists", "bankers",
)
_EMBED_VERBS = ("heard", "said", "believed", "knew", "thought")
_ACT_VERBS = ("resigned", "slept", "danced", "arrived", "smiled", "departed")
_PREPOSITIONS = ("near", "behind", "beside")


class Overlap(GeneratorTransformation):
    """Generate premise/hypothesis pairs where the hypothesis is a contiguous
    token subsequence of the premise yet is not entailed by it.

    Two template families: clause truncation ("The judges heard the actors
    resigned" / "The judges heard the actors") and prepositional-distractor
    subject swap ("The judges near the actors resigned" / "the actors
    resigned").
    """

    name = "Overlap"
    tasks = frozenset({Task.PAIR})

    def generate(self, count: int, seed: int) -> list[TransformOutput]:
        rng = random.Random(seed)
        outputs: list[TransformOutput] = []
        seen: set[tuple[str, str]] = set()
        attempts = 0
        while len(outputs) < count and attempts < count * 50:
            attempts += 1
            family = rng.choice(("truncation", "distractor"))
            a1, a2 = rng.sample(_AGENTS, 2)
            if family == "truncation":
                premise = ("The", a1, rng.choice(_EMBED_VERBS), "the", a2, rng.choice(_ACT_VERBS))
                hypothesis = premise[:5]
            else:
                premise = ("The", a1, rng.choice(_PREPOSITIONS), "the", a2, rng.choice(_ACT_VERBS))
                hypothesis = premise[3:6]
            pair = (" ".join(premise), " ".join(hypothesis))
            if pair in seen:
                continue
            seen.add(pair)
            sample = Sample(
                f"overlap-{len(outputs):04d}",
                Task.PAIR,
                {
                    "premise": TextField.from_texts(premise),
                    "hypothesis": TextField.from_texts(hypothesis),
                },
                "neutral",
            )
            trace = EditTrace({}, relabeled("template-generated non-entailed pair"))
            outputs.append(TransformOutput(None, sample, trace, self.key()))
        return outputs
