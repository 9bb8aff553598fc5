"""Sentence-level sentiment transformations; class labels never change."""
from __future__ import annotations

from ..core.edits import InsertAt, ReplaceSpan
from ..core.sample import Task
from ..core.tokens import tokenize
from ..errors import ConfigError
from .base import Transformation, match_case


class DoubleDenial(Transformation):
    """Replace a sentiment verb with negated reversal ("love" -> "don't hate"),
    preserving both the syntax and the class label."""

    name = "DoubleDenial"
    tasks = frozenset({Task.CLASSIFICATION})

    _AUX = {"base": "don't", "third": "doesn't", "past": "didn't"}

    def _build(self, sample, rng):
        verbs = self.resources.verbs
        sentiment = self.resources.sentiment
        field_ = sample.text
        candidates = []
        for tok in field_.tokens:
            if tok.index in field_.frozen:
                continue
            low = tok.text.lower()
            entry = sentiment.get(low)
            if entry is None:
                continue
            forms = [f for _, f in verbs.identify(low) if f in self._AUX]
            if not forms:
                continue
            reversal_ids = verbs.identify(entry.reversal)
            if not reversal_ids:
                continue
            candidates.append((tok.index, forms[0], reversal_ids[0][0]))
        if not candidates:
            return None
        idx, form, reversal_base = rng.choice(candidates)
        aux = match_case(field_.tokens[idx].text, self._AUX[form])
        words = (aux, self.resources.verbs.form(reversal_base, "base"))
        return self._trace({"text": [ReplaceSpan(idx, idx + 1, words)]}), None


class _VocabMixin:
    kinds = ("person", "movie")

    def _vocab(self) -> dict[str, str]:
        return self.resources.special[self.kind]

    def _mentions(self, field_) -> list[tuple[int, int, str]]:
        lower = tuple(t.lower() for t in field_.texts)
        entries = sorted(
            ((tuple(name.lower().split()), name) for name in self._vocab()),
            key=lambda pair: -len(pair[0]),
        )
        matches = []
        i = 0
        while i < len(lower):
            hit = None
            for parts, name in entries:
                if lower[i : i + len(parts)] == parts:
                    hit = (i, i + len(parts), name)
                    break
            if hit:
                matches.append(hit)
                i = hit[1]
            else:
                i += 1
        return matches


class AddSum(_VocabMixin, Transformation):
    """Append the one-line summary of a mentioned person or movie."""

    name = "AddSum"
    tasks = frozenset({Task.CLASSIFICATION})

    def __init__(self, resources, params=None, kind: str = "person"):
        super().__init__(resources, params)
        if kind not in self.kinds:
            raise ConfigError(f"unknown AddSum kind {kind!r}")
        self.kind = kind

    def key(self):
        return f"{self.name}:{self.kind}"

    def _build(self, sample, rng):
        mentions = self._mentions(sample.text)
        if not mentions:
            return None
        _, _, name = rng.choice(mentions)
        summary = tuple(t.text for t in tokenize(self._vocab()[name]))
        edits = []
        n = len(sample.text)
        if n and sample.text.tokens[-1].text not in (".", "!", "?"):
            summary = (".",) + summary
        edits.append(InsertAt(n, summary))
        return self._trace({"text": edits}), None


class SwapSpecialEnt(_VocabMixin, Transformation):
    """Swap a mentioned person or movie for another from the same vocab."""

    name = "SwapSpecialEnt"
    tasks = frozenset({Task.CLASSIFICATION})

    def __init__(self, resources, params=None, kind: str = "movie"):
        super().__init__(resources, params)
        if kind not in self.kinds:
            raise ConfigError(f"unknown SwapSpecialEnt kind {kind!r}")
        self.kind = kind

    def key(self):
        return f"{self.name}:{self.kind}"

    def _build(self, sample, rng):
        mentions = self._mentions(sample.text)
        if not mentions:
            return None
        start, end, name = rng.choice(mentions)
        options = [n for n in self._vocab() if n != name]
        if not options:
            return None
        repl = tuple(rng.choice(options).split())
        return self._trace({"text": [ReplaceSpan(start, end, repl)]}), None
