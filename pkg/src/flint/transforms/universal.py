"""Universal transformations: applicable across tasks, label-preserving
unless stated otherwise on the class.
"""
from __future__ import annotations

import random

from ..core.edits import DeleteSpan, InsertAt, ReplaceSpan
from ..core.labels import bio_decode, is_bio
from ..core.sample import Sample, Task
from ..core.tokens import STRIP_CHARS, tokenize
from ..errors import AdapterUnavailable, ConfigError
from .base import (
    ALL_TASKS,
    Transformation,
    eligible_indices,
    match_case,
)

_LETTERS = "abcdefghijklmnopqrstuvwxyz"

TEXT_TASKS = frozenset({Task.CLASSIFICATION, Task.SEQUENCE, Task.ABSA})


def _plain_tags(sample: Sample) -> bool:
    return sample.task is Task.SEQUENCE and not is_bio(sample.label)


def _seq_tags(sample: Sample, count: int, plain_tag: str = "O") -> tuple[str, ...] | None:
    """Explicit tags for inserted tokens on plain-tag sequence samples."""
    if _plain_tags(sample):
        return (plain_tag,) * count
    return None


def _entity_spans(sample: Sample, gazetteer) -> list[tuple[str, int, int, str]]:
    """Entity spans as (field, start, end, category): gold BIO spans when
    present, gazetteer longest match otherwise."""
    if sample.task is Task.SEQUENCE and is_bio(sample.label):
        return [("text", s, e, kind) for s, e, kind in bio_decode(sample.label)]
    spans = []
    for name in sorted(sample.fields):
        for s, e, cat in gazetteer.longest_match(sample.fields[name].texts):
            spans.append((name, s, e, cat))
    return spans


class CharPerturb(Transformation):
    """Character-level noise: one edit per chosen word.

    Keyboard and Ocr replace one character from their confusion tables;
    Typos applies one of insert/delete/swap/replace at an inner position
    (never the first character); SpellingError substitutes the whole word
    with an attested misspelling.
    """

    strategies = ("Keyboard", "Ocr", "Typos", "SpellingError")
    tasks = ALL_TASKS

    def __init__(self, resources, params=None, strategy: str = "Typos"):
        super().__init__(resources, params)
        if strategy not in self.strategies:
            raise ConfigError(f"unknown char perturbation strategy {strategy!r}")
        self.strategy = strategy
        self.name = strategy

    def _candidates(self, sample: Sample) -> tuple[list[tuple[str, int]], int]:
        sites = self._eligible(sample)
        usable = [site for site in sites if self._word_sites(self._word(sample, site))]
        return usable, len(sites)

    def _word(self, sample: Sample, site: tuple[str, int]) -> str:
        name, idx = site
        return sample.fields[name].tokens[idx].text

    def _word_sites(self, word: str) -> list[int]:
        if self.strategy == "Keyboard":
            return [i for i, c in enumerate(word) if c.lower() in self.resources.keyboard]
        if self.strategy == "Ocr":
            return [i for i, c in enumerate(word) if c in self.resources.ocr or c.lower() in self.resources.ocr]
        if self.strategy == "SpellingError":
            return [0] if word.lower() in self.resources.spelling else []
        return list(range(1, len(word))) if len(word) >= 3 else []

    def _perturb_word(self, word: str, rng: random.Random) -> str:
        if self.strategy == "Keyboard":
            pos = rng.choice(self._word_sites(word))
            options = sorted(self.resources.keyboard[word[pos].lower()])
            repl = rng.choice(options)
            if word[pos].isupper():
                repl = repl.upper()
            return word[:pos] + repl + word[pos + 1 :]
        if self.strategy == "Ocr":
            pos = rng.choice(self._word_sites(word))
            char = word[pos]
            options = self.resources.ocr.get(char) or self.resources.ocr[char.lower()]
            return word[:pos] + rng.choice(options) + word[pos + 1 :]
        if self.strategy == "SpellingError":
            return rng.choice(self.resources.spelling[word.lower()])
        op = rng.choice(("insert", "delete", "swap", "replace"))
        inner = self._word_sites(word)
        if op == "insert":
            pos = rng.choice(inner)
            return word[:pos] + rng.choice(_LETTERS) + word[pos:]
        if op == "delete":
            pos = rng.choice(inner)
            return word[:pos] + word[pos + 1 :]
        if op == "swap":
            swappable = [i for i in inner if i + 1 < len(word) and word[i] != word[i + 1]]
            if not swappable:
                pos = rng.choice(inner)
                repl = rng.choice([c for c in _LETTERS if c != word[pos].lower()])
                return word[:pos] + repl + word[pos + 1 :]
            pos = rng.choice(swappable)
            return word[:pos] + word[pos + 1] + word[pos] + word[pos + 2 :]
        pos = rng.choice(inner)
        repl = rng.choice([c for c in _LETTERS if c != word[pos].lower()])
        if word[pos].isupper():
            repl = repl.upper()
        return word[:pos] + repl + word[pos + 1 :]

    def _build(self, sample, rng):
        candidates, n_eligible = self._candidates(sample)
        if not candidates:
            return None
        chosen = self._choose_sites(rng, candidates, n_eligible)
        edits: dict[str, list] = {}
        for name, idx in chosen:
            word = sample.fields[name].tokens[idx].text
            new = self._perturb_word(word, rng)
            if new == word:
                continue
            edits.setdefault(name, []).append(ReplaceSpan(idx, idx + 1, (new,)))
        if not any(edits.values()):
            return None
        return self._trace(edits), None


class WordCase(Transformation):
    """Case conversion; token count and labels unchanged."""

    name = "WordCase"
    modes = ("lower", "upper", "title")

    def __init__(self, resources, params=None, mode: str = "upper"):
        super().__init__(resources, params)
        if mode not in self.modes:
            raise ConfigError(f"unknown WordCase mode {mode!r}")
        self.mode = mode

    def key(self):
        return f"{self.name}:{self.mode}"

    def _convert(self, text: str) -> str:
        if self.mode == "lower":
            return text.lower()
        if self.mode == "upper":
            return text.upper()
        for i, c in enumerate(text):
            if c.isalpha():
                return text[:i] + c.upper() + text[i + 1 :].lower()
        return text

    def _build(self, sample, rng):
        edits: dict[str, list] = {}
        for name in sorted(sample.fields):
            field_ = sample.fields[name]
            for tok in field_.tokens:
                if tok.index in field_.frozen:
                    continue
                new = self._convert(tok.text)
                if new != tok.text:
                    edits.setdefault(name, []).append(
                        ReplaceSpan(tok.index, tok.index + 1, (new,))
                    )
        if not edits:
            return None
        return self._trace(edits), None


class Contraction(Transformation):
    """Rewrite every phrase/contraction table match in one direction."""

    name = "Contraction"
    directions = ("contract", "expand")

    def __init__(self, resources, params=None, direction: str = "contract"):
        super().__init__(resources, params)
        if direction not in self.directions:
            raise ConfigError(f"unknown Contraction direction {direction!r}")
        self.direction = direction

    def key(self):
        return f"{self.name}:{self.direction}"

    def _contract_matches(self, lower: tuple[str, ...]) -> list[tuple[int, int]]:
        """Non-overlapping phrase matches; negation phrases claim their
        tokens first, so "will not" wins over "he will"."""
        table = self.resources.contractions
        taken = [False] * len(lower)
        matches: list[tuple[int, int]] = []
        for negation_pass in (True, False):
            i = 0
            while i < len(lower):
                if taken[i]:
                    i += 1
                    continue
                hit = 0
                for size in range(table.max_phrase_len, 0, -1):
                    phrase = lower[i : i + size]
                    if (
                        len(phrase) == size
                        and phrase in table.contract
                        and (phrase[-1] == "not") == negation_pass
                        and not any(taken[i : i + size])
                    ):
                        hit = size
                        break
                if hit:
                    matches.append((i, i + hit))
                    for j in range(i, i + hit):
                        taken[j] = True
                    i += hit
                else:
                    i += 1
        return sorted(matches)

    def _build(self, sample, rng):
        table = self.resources.contractions
        edits: dict[str, list] = {}
        for name in sorted(sample.fields):
            texts = sample.fields[name].texts
            lower = tuple(t.lower() for t in texts)
            if self.direction == "contract":
                for start, end in self._contract_matches(lower):
                    new = match_case(texts[start], table.contract[lower[start:end]])
                    tags = (sample.label[start],) if sample.task is Task.SEQUENCE else None
                    edits.setdefault(name, []).append(
                        ReplaceSpan(start, end, (new,), tags)
                    )
            else:
                for i, low in enumerate(lower):
                    if low in table.expand:
                        phrase = table.expand[low]
                        first = match_case(texts[i], phrase[0])
                        new = (first,) + tuple(phrase[1:])
                        tags = None
                        if sample.task is Task.SEQUENCE:
                            tags = (sample.label[i],) * len(new)
                        edits.setdefault(name, []).append(ReplaceSpan(i, i + 1, new, tags))
        if not edits:
            return None
        return self._trace(edits), None


class SwapLexical(Transformation):
    """Replace eligible words via the synonym or antonym lexicon.

    Synonym substitution is declared label-preserving for every task;
    antonym substitution flips sentence meaning, so it is restricted to
    sequence-labeling tasks where tags survive the swap.
    """

    def __init__(self, resources, params=None, relation: str = "synonym"):
        super().__init__(resources, params)
        if relation not in ("synonym", "antonym"):
            raise ConfigError(f"unknown lexical relation {relation!r}")
        self.relation = relation
        self.name = "SwapSyn" if relation == "synonym" else "SwapAnt"
        if relation == "antonym":
            self.tasks = frozenset({Task.SEQUENCE})

    def _lexicon(self):
        return self.resources.synonyms if self.relation == "synonym" else self.resources.antonyms

    def _build(self, sample, rng):
        lexicon = self._lexicon()
        sites = self._eligible(sample)
        candidates = [
            (name, idx)
            for name, idx in sites
            if sample.fields[name].tokens[idx].text.lower() in lexicon
        ]
        if not candidates:
            return None
        chosen = self._choose_sites(rng, candidates, len(sites))
        edits: dict[str, list] = {}
        for name, idx in chosen:
            word = sample.fields[name].tokens[idx].text
            options = lexicon[word.lower()]
            repl = match_case(word, rng.choice(options))
            if repl == word:
                continue
            edits.setdefault(name, []).append(ReplaceSpan(idx, idx + 1, (repl,)))
        if not any(edits.values()):
            return None
        return self._trace(edits), None


class SwapNum(Transformation):
    """Replace numeric tokens with different numerals of equal digit count."""

    name = "SwapNum"
    tasks = frozenset({Task.SEQUENCE, Task.CLASSIFICATION})

    def _build(self, sample, rng):
        edits: dict[str, list] = {}
        for name in sorted(sample.fields):
            field_ = sample.fields[name]
            for tok in field_.tokens:
                if tok.index in field_.frozen or not tok.text.isdigit():
                    continue
                new = self._different_numeral(tok.text, rng)
                edits.setdefault(name, []).append(
                    ReplaceSpan(tok.index, tok.index + 1, (new,))
                )
        if not edits:
            return None
        return self._trace(edits), None

    @staticmethod
    def _different_numeral(numeral: str, rng: random.Random) -> str:
        digits = len(numeral)
        low = 0 if digits == 1 else 10 ** (digits - 1)
        high = 10**digits - 1
        while True:
            value = str(rng.randint(low, high))
            if value != numeral:
                return value


class InsertAdv(Transformation):
    """Insert an adverb before each detected verb."""

    name = "InsertAdv"

    def _build(self, sample, rng):
        verbs = self.resources.verbs
        edits: dict[str, list] = {}
        for name in sorted(sample.fields):
            field_ = sample.fields[name]
            for tok in field_.tokens:
                if tok.index in field_.frozen or not verbs.is_verb(tok.text.lower()):
                    continue
                adverb = rng.choice(self.resources.adverbs)
                edits.setdefault(name, []).append(
                    InsertAt(tok.index, (adverb,), _seq_tags(sample, 1, "RB"))
                )
        if not edits:
            return None
        return self._trace(edits), None


class AppendIrr(Transformation):
    """Append (or prepend) an irrelevant corpus sentence to the text field."""

    name = "AppendIrr"
    tasks = TEXT_TASKS
    positions = ("suffix", "prefix", "both")

    def __init__(self, resources, params=None, position: str = "suffix"):
        super().__init__(resources, params)
        if position not in self.positions:
            raise ConfigError(f"unknown AppendIrr position {position!r}")
        self.position = position

    def key(self):
        return self.name if self.position == "suffix" else f"{self.name}:{self.position}"

    def _build(self, sample, rng):
        if not self.resources.irrelevant:
            raise ConfigError("AppendIrr needs a non-empty irrelevant-sentence corpus")
        n = len(sample.text)
        edits = []
        if self.position in ("suffix", "both"):
            texts = tuple(t.text for t in tokenize(rng.choice(self.resources.irrelevant)))
            edits.append(InsertAt(n, texts, _seq_tags(sample, len(texts))))
        if self.position in ("prefix", "both"):
            texts = tuple(t.text for t in tokenize(rng.choice(self.resources.irrelevant)))
            edits.append(InsertAt(0, texts, _seq_tags(sample, len(texts))))
        return self._trace({"text": edits}), None


class TwitterType(Transformation):
    """Restyle text as a social-media post: handle prefix and/or URL suffix."""

    name = "TwitterType"
    tasks = TEXT_TASKS

    def _build(self, sample, rng):
        variant = rng.choice(("prefix", "suffix", "both"))
        edits = []
        if variant in ("prefix", "both"):
            handle = rng.choice(self.resources.handles)
            edits.append(InsertAt(0, (handle,), _seq_tags(sample, 1)))
        if variant in ("suffix", "both"):
            url = rng.choice(self.resources.urls)
            n = len(sample.text)
            tail: tuple[str, ...] = (url,)
            if n and sample.text.tokens[-1].text not in (".", "!", "?"):
                tail = (".", url)
            edits.append(InsertAt(n, tail, _seq_tags(sample, len(tail))))
        return self._trace({"text": edits}), None


class EditPunc(Transformation):
    """Add bracketing/comma punctuation, or delete terminal punctuation."""

    modes = ("add", "remove")
    tasks = TEXT_TASKS

    def __init__(self, resources, params=None, mode: str = "add"):
        super().__init__(resources, params)
        if mode not in self.modes:
            raise ConfigError(f"unknown punctuation mode {mode!r}")
        self.mode = mode
        self.name = "AddPunc" if mode == "add" else "RmvPunc"

    def _build(self, sample, rng):
        field_ = sample.text
        n = len(field_)
        if n == 0:
            return None
        if self.mode == "remove":
            end = n
            while end > 0 and field_.tokens[end - 1].text in STRIP_CHARS:
                end -= 1
            if end == n:
                return None
            return self._trace({"text": [DeleteSpan(end, n)]}), None
        style = rng.choice(("comma", "bracket"))
        if style == "comma":
            boundaries = [
                i
                for i in range(1, n)
                if field_.tokens[i - 1].text not in STRIP_CHARS
                and field_.tokens[i].text not in STRIP_CHARS
            ]
            if not boundaries:
                style = "bracket"
            else:
                pos = rng.choice(boundaries)
                return self._trace({"text": [InsertAt(pos, (",",), _seq_tags(sample, 1))]}), None
        end = n
        while end > 0 and field_.tokens[end - 1].text in STRIP_CHARS:
            end -= 1
        if end == 0:
            return None
        edits = [
            InsertAt(0, ("(",), _seq_tags(sample, 1)),
            InsertAt(end, (")",), _seq_tags(sample, 1)),
        ]
        return self._trace({"text": edits}), None


_BE = {"am": "sing", "is": "sing", "are": "plur", "was": "sing", "were": "plur"}
_HAVE = {"has": "sing", "have": "plur", "had": "sing"}
_TENSES = ("present", "past", "progressive", "perfect", "future")

_FORM_TAGS = {
    "base": "VB",
    "third": "VBZ",
    "past": "VBD",
    "gerund": "VBG",
    "participle": "VBN",
}
_AUX_TAGS = {
    "is": "VBZ", "has": "VBZ", "am": "VBP", "are": "VBP", "have": "VBP",
    "was": "VBD", "were": "VBD", "had": "VBD", "will": "MD",
}


class Tense(Transformation):
    """Re-inflect each detected verb group to a different random tense.

    Verb groups are a single inflection-table verb, optionally preceded by
    a be/have auxiliary (progressive/perfect) or ``will`` (future). Subject
    number is inferred from the auxiliary or verb form; a preceding ``I``
    selects first person.
    """

    name = "Tense"

    def _groups(self, texts: tuple[str, ...]):
        verbs = self.resources.verbs
        groups = []
        i = 0
        while i < len(texts):
            low = texts[i].lower()
            nxt = texts[i + 1].lower() if i + 1 < len(texts) else None
            if low in _BE and nxt:
                hits = [b for b, f in verbs.identify(nxt) if f == "gerund"]
                if hits:
                    groups.append((i, i + 2, hits[0], "progressive", _BE[low]))
                    i += 2
                    continue
            if low in _HAVE and nxt:
                hits = [b for b, f in verbs.identify(nxt) if f == "participle"]
                if hits:
                    groups.append((i, i + 2, hits[0], "perfect", _HAVE[low]))
                    i += 2
                    continue
            if low == "will" and nxt:
                hits = [b for b, f in verbs.identify(nxt) if f == "base"]
                if hits:
                    groups.append((i, i + 2, hits[0], "future", "plur"))
                    i += 2
                    continue
            ids = verbs.identify(low)
            if ids:
                base, form = ids[0]
                if form in ("base", "third", "past"):
                    tense = "past" if form == "past" else "present"
                    number = "plur" if form == "base" else "sing"
                    groups.append((i, i + 1, base, tense, number))
            i += 1
        return groups

    def _render(self, base: str, tense: str, number: str, first_person: bool):
        verbs = self.resources.verbs
        if tense == "present":
            return [verbs.form(base, "third")], ["VBZ"]
        if tense == "past":
            return [verbs.form(base, "past")], ["VBD"]
        if tense == "future":
            return ["will", verbs.form(base, "base")], ["MD", "VB"]
        if tense == "progressive":
            aux = "am" if first_person else ("are" if number == "plur" else "is")
            return [aux, verbs.form(base, "gerund")], [_AUX_TAGS[aux], "VBG"]
        aux = "have" if (first_person or number == "plur") else "has"
        return [aux, verbs.form(base, "participle")], [_AUX_TAGS[aux], "VBN"]

    def _build(self, sample, rng):
        edits: dict[str, list] = {}
        plain = _plain_tags(sample)
        for name in sorted(sample.fields):
            field_ = sample.fields[name]
            texts = field_.texts
            for start, end, base, tense, number in self._groups(texts):
                if any(i in field_.frozen for i in range(start, end)):
                    continue
                target = rng.choice([t for t in _TENSES if t != tense])
                first_person = start > 0 and texts[start - 1].lower() == "i"
                words, tags = self._render(base, target, number, first_person)
                words[0] = match_case(texts[start], words[0])
                edits.setdefault(name, []).append(
                    ReplaceSpan(start, end, tuple(words), tuple(tags) if plain else None)
                )
        if not edits:
            return None
        return self._trace(edits), None


class SwapNamedEnt(Transformation):
    """Swap one entity for a different same-category gazetteer surface form."""

    name = "SwapNamedEnt"

    def _build(self, sample, rng):
        gaz = self.resources.gazetteer
        spans = [
            (name, s, e, cat)
            for name, s, e, cat in _entity_spans(sample, gaz)
            if gaz.surfaces(cat)
        ]
        if not spans:
            return None
        name, s, e, cat = rng.choice(spans)
        surface = " ".join(sample.fields[name].texts[s:e])
        options = [x for x in gaz.surfaces(cat) if x != surface]
        if not options:
            return None
        repl = tuple(rng.choice(options).split())
        tags = None
        if sample.task is Task.SEQUENCE and not is_bio(sample.label):
            tags = (sample.label[s],) * len(repl)
        return self._trace({name: [ReplaceSpan(s, e, repl, tags)]}), None


class Prejudice(Transformation):
    """Swap person names to a target gender, or locations to a target region.

    Only mentions whose tag differs from the target are swapped; the same
    source name maps to the same replacement everywhere in the sample, and
    replacements are drawn without replacement while the pool lasts.
    """

    name = "Prejudice"

    def __init__(self, resources, params=None, target: str = "man"):
        super().__init__(resources, params)
        if target.startswith("region:"):
            self.category, self.value = "LOC", target.split(":", 1)[1]
        elif target in ("man", "woman"):
            self.category, self.value = "PER", target
        else:
            raise ConfigError(f"unknown Prejudice target {target!r}")
        self.target = target

    def key(self):
        return f"{self.name}:{self.target}"

    def _build(self, sample, rng):
        gaz = self.resources.gazetteer
        spans = [
            (name, s, e)
            for name, s, e, cat in _entity_spans(sample, gaz)
            if cat == self.category
        ]
        mentions: list[tuple[str, int, int, str]] = []
        for name, s, e in spans:
            surface = " ".join(sample.fields[name].texts[s:e])
            tag = gaz.attribute(self.category, surface)
            if tag is not None and tag != self.value:
                mentions.append((name, s, e, surface))
        if not mentions:
            return None
        pool = [x for x in gaz.with_attribute(self.category, self.value)]
        if not pool:
            raise ConfigError(f"gazetteer has no {self.category} entries tagged {self.value!r}")
        mapping: dict[str, str] = {}
        available = list(pool)
        for surface in dict.fromkeys(m[3] for m in mentions):
            if available:
                pick = rng.choice(available)
                available.remove(pick)
            else:
                pick = rng.choice(pool)
            mapping[surface] = pick
        edits: dict[str, list] = {}
        for name, s, e, surface in mentions:
            repl = tuple(mapping[surface].split())
            tags = None
            if sample.task is Task.SEQUENCE and not is_bio(sample.label):
                tags = (sample.label[s],) * len(repl)
            edits.setdefault(name, []).append(ReplaceSpan(s, e, repl, tags))
        return self._trace(edits), None


class ReverseNeg(Transformation):
    """Insert or remove verbal negation; sequence-labeling tasks only,
    since flipping polarity would invalidate classification labels."""

    modes = ("add", "remove")
    tasks = frozenset({Task.SEQUENCE})

    def __init__(self, resources, params=None, mode: str = "add"):
        super().__init__(resources, params)
        if mode not in self.modes:
            raise ConfigError(f"unknown negation mode {mode!r}")
        self.mode = mode
        self.name = "AddNeg" if mode == "add" else "RmvNeg"

    _CONTRACTED = {"doesn't": "third", "don't": "base", "didn't": "past"}
    _COPULAS = ("is", "are", "was", "were", "am")

    def _build(self, sample, rng):
        return self._add(sample) if self.mode == "add" else self._remove(sample)

    def _add(self, sample):
        verbs = self.resources.verbs
        field_ = sample.text
        texts = field_.texts
        plain = _plain_tags(sample)
        for i, text in enumerate(texts):
            if i in field_.frozen:
                continue
            low = text.lower()
            if low in self._COPULAS or low in self.resources.negation_aux:
                if i + 1 < len(texts) and texts[i + 1].lower() == "not":
                    return None  # already negated
                edit = InsertAt(i + 1, ("not",), ("RB",) if plain else None)
                return self._trace({"text": [edit]}), None
            for base, form in verbs.identify(low):
                if form not in ("base", "third", "past"):
                    continue
                aux = {"base": "don't", "third": "doesn't", "past": "didn't"}[form]
                aux = match_case(text, aux)
                words = (aux, verbs.form(base, "base"))
                tags = (_FORM_TAGS[form], "VB") if plain else None
                edit = ReplaceSpan(i, i + 1, words, tags)
                return self._trace({"text": [edit]}), None
        return None

    def _remove(self, sample):
        verbs = self.resources.verbs
        texts = sample.text.texts
        plain = _plain_tags(sample)
        for i, text in enumerate(texts):
            low = text.lower()
            if low in self._CONTRACTED:
                form = self._CONTRACTED[low]
                nxt = texts[i + 1].lower() if i + 1 < len(texts) else None
                hits = [b for b, f in verbs.identify(nxt or "") if f == "base"]
                if hits:
                    word = match_case(text, verbs.form(hits[0], form))
                    tags = (_FORM_TAGS[form],) if plain else None
                    return self._trace({"text": [ReplaceSpan(i, i + 2, (word,), tags)]}), None
            if low.endswith("n't") and low[:-3] in self._COPULAS + ("do", "does", "did"):
                stem = low[:-3]
                if stem in self._COPULAS:
                    word = match_case(text, stem)
                    tags = (_AUX_TAGS.get(stem, "VB"),) if plain else None
                    return self._trace({"text": [ReplaceSpan(i, i + 1, (word,), tags)]}), None
            if low == "not" and i > 0 and texts[i - 1].lower() in self._COPULAS + tuple(self.resources.negation_aux):
                prev = texts[i - 1].lower()
                if prev in ("do", "does", "did"):
                    nxt = texts[i + 1].lower() if i + 1 < len(texts) else None
                    hits = [b for b, f in verbs.identify(nxt or "") if f == "base"]
                    if hits:
                        form = {"do": "base", "does": "third", "did": "past"}[prev]
                        word = match_case(texts[i - 1], verbs.form(hits[0], form))
                        tags = (_FORM_TAGS[form],) if plain else None
                        return self._trace({"text": [ReplaceSpan(i - 1, i + 2, (word,), tags)]}), None
                    continue
                return self._trace({"text": [DeleteSpan(i, i + 1)]}), None
        return None


class PluginTransform(Transformation):
    """Named plug-in slot for model-backed rewriting (adapter required).

    The adapter receives the text field and returns a paraphrase via the
    wire protocol's ``rewrite`` request; the core only validates the result
    and realigns. Rewrites cannot be aligned to per-token labels, so only
    classification-style tasks are supported.
    """

    plugin_names = ("BackTrans", "MLMSuggestion")
    tasks = frozenset({Task.CLASSIFICATION, Task.PAIR})

    def __init__(self, resources, params=None, plugin: str = "BackTrans", adapter=None):
        super().__init__(resources, params)
        if plugin not in self.plugin_names:
            raise ConfigError(f"unknown plugin transform {plugin!r}")
        self.name = plugin
        self.adapter = adapter

    def _build(self, sample, rng):
        if self.adapter is None:
            raise AdapterUnavailable(f"{self.name} requires a configured rewrite adapter")
        name = "text" if "text" in sample.fields else "hypothesis"
        field_ = sample.fields[name]
        rewritten = self.adapter.rewrite([field_.raw])[0]
        if rewritten.strip() == field_.raw.strip():
            return None
        texts = tuple(t.text for t in tokenize(rewritten))
        if not texts:
            return None
        edit = ReplaceSpan(0, len(field_), texts)
        return self._trace({name: [edit]}), None
