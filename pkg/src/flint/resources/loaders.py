"""Lexicon loading and validation.

Plain-text lexicons live in versioned files under ``resources/data`` and can
be overridden per run by pointing the config at another directory. TSV files
hold ``key TAB space-separated values``; JSON is used for the gazetteer and
the summary-style resources. Every kind validates its own invariant at load
time and rejects violating entries.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field as dc_field
from importlib import resources as importlib_resources
from pathlib import Path
from typing import Mapping

from ..errors import InvariantError, LexiconFormatError


def bundled_dir() -> Path:
    return Path(str(importlib_resources.files("flint.resources").joinpath("data")))


def _tsv_rows(path: Path) -> list[tuple[int, str, list[str]]]:
    rows = []
    try:
        lines = path.read_text(encoding="utf-8").splitlines()
    except OSError as exc:
        raise LexiconFormatError(f"cannot read {path}: {exc}") from exc
    for i, line in enumerate(lines, start=1):
        if not line.strip() or line.startswith("#"):
            continue
        if "\t" not in line:
            raise LexiconFormatError(f"{path.name}: expected key<TAB>values", line=i)
        key, _, rest = line.partition("\t")
        values = rest.split()
        if not key or not values:
            raise LexiconFormatError(f"{path.name}: empty key or values", line=i)
        rows.append((i, key, values))
    return rows


def _lines(path: Path) -> list[str]:
    return [ln.strip() for ln in path.read_text(encoding="utf-8").splitlines() if ln.strip()]


def load_adjacency(path: Path) -> dict[str, frozenset[str]]:
    table: dict[str, set[str]] = {}
    for i, key, values in _tsv_rows(path):
        if len(key) != 1:
            raise LexiconFormatError(f"{path.name}: key must be one character", line=i)
        table[key] = set(values)
    for key, neighbors in table.items():
        for n in neighbors:
            if key not in table.get(n, ()):
                raise InvariantError(f"adjacency not symmetric: {key!r} -> {n!r}")
    return {k: frozenset(v) for k, v in table.items()}


def load_confusions(path: Path) -> dict[str, tuple[str, ...]]:
    table: dict[str, tuple[str, ...]] = {}
    for i, key, values in _tsv_rows(path):
        if key in values:
            raise InvariantError(f"confusion replacement equals key: {key!r}")
        table[key] = tuple(values)
    return table


def load_error_forms(path: Path) -> dict[str, tuple[str, ...]]:
    table: dict[str, tuple[str, ...]] = {}
    for i, key, values in _tsv_rows(path):
        if key in values:
            raise InvariantError(f"misspelling equals word: {key!r}")
        table[key] = tuple(values)
    return table


@dataclass(frozen=True)
class ContractionTable:
    contract: Mapping[tuple[str, ...], str]  # lowercased phrase tokens -> contraction
    expand: Mapping[str, tuple[str, ...]]  # lowercased contraction -> phrase tokens

    @property
    def max_phrase_len(self) -> int:
        return max(len(p) for p in self.contract)


def load_contractions(path: Path) -> ContractionTable:
    contract: dict[tuple[str, ...], str] = {}
    expand: dict[str, tuple[str, ...]] = {}
    for i, key, values in _tsv_rows(path):
        if len(values) != 1:
            raise LexiconFormatError(f"{path.name}: exactly one contraction per phrase", line=i)
        phrase = tuple(key.lower().split())
        short = values[0].lower()
        if phrase in contract or short in expand:
            raise InvariantError(f"contraction table not bijective at {key!r} / {values[0]!r}")
        contract[phrase] = values[0]
        expand[short] = phrase
    return ContractionTable(contract, expand)


def load_word_map(path: Path, *, reflexive_error: str) -> dict[str, tuple[str, ...]]:
    table: dict[str, tuple[str, ...]] = {}
    for i, key, values in _tsv_rows(path):
        if key in values:
            raise InvariantError(f"{reflexive_error}: {key!r}")
        table[key] = tuple(values)
    return table


@dataclass(frozen=True)
class SentimentEntry:
    polarity: str  # "pos" | "neg"
    reversal: str


def load_sentiment(path: Path) -> dict[str, SentimentEntry]:
    table: dict[str, SentimentEntry] = {}
    for i, key, values in _tsv_rows(path):
        if len(values) != 2 or values[0] not in ("pos", "neg"):
            raise LexiconFormatError(f"{path.name}: expected word<TAB>pos|neg reversal", line=i)
        table[key] = SentimentEntry(values[0], values[1])
    for word, entry in table.items():
        partner = table.get(entry.reversal)
        if partner is None or partner.polarity == entry.polarity:
            raise InvariantError(f"reversal of {word!r} must exist with opposite polarity")
    return table


def load_acronyms(path: Path) -> dict[str, tuple[str, ...]]:
    table: dict[str, tuple[str, ...]] = {}
    for i, key, values in _tsv_rows(path):
        table[key] = tuple(values)
    return table


FORM_NAMES = ("base", "third", "past", "gerund", "participle")


@dataclass(frozen=True)
class VerbTable:
    # base -> {form name -> surface}
    forms: Mapping[str, Mapping[str, str]]
    # surface -> list of (base, form name)
    index: Mapping[str, tuple[tuple[str, str], ...]]

    def is_verb(self, word: str) -> bool:
        return word.lower() in self.index

    def identify(self, word: str) -> tuple[tuple[str, str], ...]:
        return self.index.get(word.lower(), ())

    def form(self, base: str, name: str) -> str:
        return self.forms[base][name]


def load_inflections(path: Path) -> VerbTable:
    forms: dict[str, dict[str, str]] = {}
    index: dict[str, list[tuple[str, str]]] = {}
    for i, key, values in _tsv_rows(path):
        if len(values) != 4:
            raise LexiconFormatError(
                f"{path.name}: expected base<TAB>3sg past gerund participle", line=i
            )
        row = dict(zip(FORM_NAMES, (key, *values)))
        forms[key] = row
        for name, surface in row.items():
            index.setdefault(surface, [])
            if (key, name) not in index[surface]:
                index[surface].append((key, name))
    return VerbTable(forms, {k: tuple(v) for k, v in index.items()})


def load_multi_pos(path: Path) -> dict[str, frozenset[str]]:
    table: dict[str, frozenset[str]] = {}
    for i, key, values in _tsv_rows(path):
        pos = frozenset(values)
        if len(pos) < 2:
            raise InvariantError(f"multi-POS word {key!r} lists fewer than two parts of speech")
        table[key] = pos
    return table


@dataclass(frozen=True)
class PrefixTable:
    prefixes: tuple[str, ...]
    excluded: frozenset[str]
    # root -> words formed as prefix+root
    vocab: Mapping[str, frozenset[str]]


def load_prefixes(table_path: Path, vocab_path: Path) -> PrefixTable:
    rows = {key: values for _, key, values in _tsv_rows(table_path)}
    if "prefixes" not in rows or "excluded" not in rows:
        raise LexiconFormatError(f"{table_path.name}: needs 'prefixes' and 'excluded' rows")
    vocab: dict[str, frozenset[str]] = {}
    for i, root, words in _tsv_rows(vocab_path):
        vocab[root] = frozenset(words)
    excluded = frozenset(rows["excluded"])
    prefixes = tuple(p for p in rows["prefixes"] if p not in excluded)
    return PrefixTable(prefixes, excluded, vocab)


@dataclass(frozen=True)
class Gazetteer:
    """Category-keyed entity surface forms, with a held-out OOV pool.

    PER names carry a gender tag and LOC names a region tag; ORG entries
    are plain surface forms.
    """

    main: Mapping[str, tuple[str, ...]]  # category -> surfaces, file order
    oov: Mapping[str, tuple[str, ...]]
    attributes: Mapping[str, Mapping[str, str]]  # category -> surface -> tag

    @property
    def categories(self) -> tuple[str, ...]:
        return tuple(self.main)

    def surfaces(self, category: str, pool: str = "main") -> tuple[str, ...]:
        table = self.main if pool == "main" else self.oov
        return table.get(category, ())

    def attribute(self, category: str, surface: str) -> str | None:
        return self.attributes.get(category, {}).get(surface)

    def with_attribute(self, category: str, value: str) -> tuple[str, ...]:
        attrs = self.attributes.get(category, {})
        return tuple(s for s in self.main.get(category, ()) if attrs.get(s) == value)

    def category_of(self, surface: str) -> str | None:
        for cat, surfaces in self.main.items():
            if surface in surfaces:
                return cat
        return None

    def longest_match(self, texts: tuple[str, ...]) -> list[tuple[int, int, str]]:
        """Greedy left-to-right longest match of main-pool entries."""
        by_first: dict[str, list[tuple[tuple[str, ...], str]]] = {}
        for cat, surfaces in self.main.items():
            for s in surfaces:
                parts = tuple(s.split())
                by_first.setdefault(parts[0], []).append((parts, cat))
        for options in by_first.values():
            options.sort(key=lambda pc: -len(pc[0]))
        matches: list[tuple[int, int, str]] = []
        i = 0
        while i < len(texts):
            hit = None
            for parts, cat in by_first.get(texts[i], ()):
                if tuple(texts[i : i + len(parts)]) == parts:
                    hit = (i, i + len(parts), cat)
                    break
            if hit:
                matches.append(hit)
                i = hit[1]
            else:
                i += 1
        return matches


def load_gazetteer(path: Path) -> Gazetteer:
    try:
        data = json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise LexiconFormatError(f"{path.name}: invalid JSON: {exc.msg}", line=exc.lineno) from exc
    main: dict[str, tuple[str, ...]] = {}
    oov: dict[str, tuple[str, ...]] = {}
    attributes: dict[str, dict[str, str]] = {}
    for cat, pools in data.items():
        for pool_name, target in (("main", main), ("oov", oov)):
            pool = pools.get(pool_name, {})
            if isinstance(pool, dict):
                target[cat] = tuple(pool)
                if pool_name == "main":
                    attributes[cat] = dict(pool)
            else:
                target[cat] = tuple(pool)
    seen: dict[str, str] = {}
    for cat in main:
        for surface in main[cat] + oov.get(cat, ()):
            if surface in seen:
                raise InvariantError(
                    f"gazetteer categories overlap: {surface!r} in {seen[surface]} and {cat}"
                )
            seen[surface] = cat
    return Gazetteer(main, oov, attributes)


@dataclass(frozen=True)
class AspectOpinion:
    aspect: str
    positive: str
    negative: str


def load_aspect_opinions(path: Path) -> tuple[AspectOpinion, ...]:
    data = json.loads(path.read_text(encoding="utf-8"))
    out = []
    for entry in data:
        out.append(AspectOpinion(entry["aspect"], entry["positive"], entry["negative"]))
    return tuple(out)


KIND_LOADERS = {
    "adjacency": load_adjacency,
    "confusion": load_confusions,
    "error_forms": load_error_forms,
    "contractions": load_contractions,
    "synonyms": lambda p: load_word_map(p, reflexive_error="word is its own synonym"),
    "antonyms": lambda p: load_word_map(p, reflexive_error="word is its own antonym"),
    "sentiment": load_sentiment,
    "acronyms": load_acronyms,
    "inflections": load_inflections,
    "multi_pos": load_multi_pos,
    "gazetteer": load_gazetteer,
    "aspect_opinions": load_aspect_opinions,
    "wordlist": _lines,
}


def load_lexicon(path: str | Path, kind: str):
    """Load and validate one lexicon file of the given kind."""
    if kind not in KIND_LOADERS:
        raise LexiconFormatError(f"unknown lexicon kind {kind!r}")
    return KIND_LOADERS[kind](Path(path))


@dataclass(frozen=True)
class Resources:
    """All loaded lexicons, immutable and shareable across workers."""

    keyboard: dict
    ocr: dict
    spelling: dict
    contractions: ContractionTable
    synonyms: dict
    antonyms: dict
    sentiment: dict
    acronyms: dict
    verbs: VerbTable
    multi_pos: dict
    prefixes: PrefixTable
    gazetteer: Gazetteer
    adverbs: tuple[str, ...]
    irrelevant: tuple[str, ...]
    handles: tuple[str, ...]
    urls: tuple[str, ...]
    special: dict
    aspect_opinions: tuple[AspectOpinion, ...]
    negation_words: tuple[str, ...]
    question_words: tuple[str, ...]
    negation_aux: tuple[str, ...]

    @classmethod
    def load(cls, directory: str | Path | None = None) -> "Resources":
        base = Path(directory) if directory else bundled_dir()
        snippets = {key: values for _, key, values in _tsv_rows(base / "twitter_snippets.tsv")}
        phrases = {key: values for _, key, values in _tsv_rows(base / "phrase_words.tsv")}
        special = json.loads((base / "special_entities.json").read_text(encoding="utf-8"))
        return cls(
            keyboard=load_adjacency(base / "keyboard.tsv"),
            ocr=load_confusions(base / "ocr_confusion.tsv"),
            spelling=load_error_forms(base / "spelling_errors.tsv"),
            contractions=load_contractions(base / "contractions.tsv"),
            synonyms=load_word_map(base / "synonyms.tsv", reflexive_error="word is its own synonym"),
            antonyms=load_word_map(base / "antonyms.tsv", reflexive_error="word is its own antonym"),
            sentiment=load_sentiment(base / "sentiment.tsv"),
            acronyms=load_acronyms(base / "acronyms.tsv"),
            verbs=load_inflections(base / "verb_inflections.tsv"),
            multi_pos=load_multi_pos(base / "multi_pos.tsv"),
            prefixes=load_prefixes(base / "prefixes.tsv", base / "prefix_vocab.tsv"),
            gazetteer=load_gazetteer(base / "gazetteer.json"),
            adverbs=tuple(_lines(base / "adverbs.txt")),
            irrelevant=tuple(_lines(base / "irrelevant_sentences.txt")),
            handles=tuple(snippets.get("handles", ())),
            urls=tuple(snippets.get("urls", ())),
            special=special,
            aspect_opinions=load_aspect_opinions(base / "aspect_opinions.json"),
            negation_words=tuple(phrases.get("negation", ())),
            question_words=tuple(phrases.get("question", ())),
            negation_aux=tuple(phrases.get("negation_aux", ())),
        )


_BUNDLED: Resources | None = None


def bundled_resources() -> Resources:
    global _BUNDLED
    if _BUNDLED is None:
        _BUNDLED = Resources.load()
    return _BUNDLED
