"""POS-tagging probes: both keep every gold tag byte-identical."""
from __future__ import annotations

from ..core.edits import ReplaceSpan
from ..core.labels import is_bio
from ..core.sample import Task
from .base import Transformation, match_case

# Inflected verb tags are excluded: multi-POS entries are base forms.
_COARSE = {
    "NN": "noun", "NNS": "noun", "NNP": "noun", "NNPS": "noun",
    "VB": "verb", "VBP": "verb",
    "JJ": "adjective", "JJR": "adjective", "JJS": "adjective",
    "RB": "adverb", "RBR": "adverb", "RBS": "adverb",
}


def _coarse_pos(tag: str) -> str | None:
    return _COARSE.get(tag)


class SwapPrefix(Transformation):
    """Swap a derivational prefix for another that still forms a real word.

    POS-changing prefixes (en-, de-, be-, a-, out-) are never used on
    either side of the swap, so the part of speech survives.
    """

    name = "SwapPrefix"
    tasks = frozenset({Task.SEQUENCE})

    def _splits(self, word: str) -> list[tuple[str, str]]:
        table = self.resources.prefixes
        low = word.lower()
        out = []
        for prefix in table.prefixes:
            root = low[len(prefix) :]
            if low.startswith(prefix) and len(root) >= 2:
                forms = table.vocab.get(root)
                if forms and low in forms:
                    out.append((prefix, root))
        return out

    def _build(self, sample, rng):
        field_ = sample.text
        table = self.resources.prefixes
        candidates = []
        for tok in field_.tokens:
            if tok.index in field_.frozen or not tok.text.isalpha():
                continue
            for prefix, root in self._splits(tok.text):
                others = [
                    p
                    for p in table.prefixes
                    if p != prefix and p + root in table.vocab[root]
                ]
                if others:
                    candidates.append((tok.index, prefix, root, others))
        if not candidates:
            return None
        idx, prefix, root, others = rng.choice(candidates)
        new = match_case(field_.tokens[idx].text, rng.choice(others) + root)
        tags = (sample.label[idx],) if not is_bio(sample.label) else None
        return self._trace({"text": [ReplaceSpan(idx, idx + 1, (new,), tags)]}), None


class SwapMultiPOS(Transformation):
    """Replace a noun/verb/adjective/adverb with a multi-POS word that can
    still hold the original tag; the gold tag is unchanged."""

    name = "SwapMultiPOS"
    tasks = frozenset({Task.SEQUENCE})

    def _build(self, sample, rng):
        if is_bio(sample.label):
            return None
        field_ = sample.text
        candidates = []
        for tok in field_.tokens:
            if tok.index in field_.frozen or not tok.text.isalpha():
                continue
            coarse = _coarse_pos(sample.label[tok.index])
            if coarse is None:
                continue
            options = [
                w
                for w, pos in self.resources.multi_pos.items()
                if coarse in pos and w != tok.text.lower()
            ]
            if options:
                candidates.append((tok.index, options))
        if not candidates:
            return None
        idx, options = rng.choice(candidates)
        new = match_case(field_.tokens[idx].text, rng.choice(options))
        tags = (sample.label[idx],)
        return self._trace({"text": [ReplaceSpan(idx, idx + 1, (new,), tags)]}), None
