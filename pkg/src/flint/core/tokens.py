"""Tokens, text fields and the whitespace-rendering rule.

Tokenization splits on whitespace, then splits leading/trailing punctuation
off each chunk into separate tokens. Apostrophes inside a word ("don't")
do not split. Offsets are exact: ``raw[t.char_start:t.char_end] == t.text``.

Detokenization joins tokens with single spaces, except that no space is
placed before a token in :data:`NO_SPACE_BEFORE` and none after ``(``.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Sequence

# Punctuation split off token edges by the tokenizer. Deliberately excludes
# @ # $ & - / _ so handles, tags and hyphenated words stay whole.
STRIP_CHARS = frozenset(".,!?;:()[]{}\"'‘’“”")

NO_SPACE_BEFORE = frozenset({".", ",", "!", "?", ";", ":", "'", "’", ")"})
NO_SPACE_AFTER = frozenset({"("})

_CHUNK = re.compile(r"\S+")


@dataclass(frozen=True)
class Token:
    """One token of a field, with exact offsets into the field's raw text."""

    text: str
    char_start: int
    char_end: int
    index: int

    def __post_init__(self) -> None:
        if not self.text or any(c.isspace() for c in self.text):
            raise ValueError(f"token text must be non-empty without whitespace: {self.text!r}")
        if not 0 <= self.char_start < self.char_end:
            raise ValueError(f"bad token offsets [{self.char_start}, {self.char_end})")


def tokenize(raw: str) -> tuple[Token, ...]:
    """Split ``raw`` into tokens with exact character offsets."""
    tokens: list[Token] = []

    def emit(text: str, start: int) -> None:
        tokens.append(Token(text, start, start + len(text), len(tokens)))

    for m in _CHUNK.finditer(raw):
        chunk, base = m.group(), m.start()
        left, right = 0, len(chunk)
        trailing: list[tuple[str, int]] = []
        while left < right and chunk[left] in STRIP_CHARS:
            emit(chunk[left], base + left)
            left += 1
        while right > left and chunk[right - 1] in STRIP_CHARS:
            trailing.append((chunk[right - 1], base + right - 1))
            right -= 1
        if left < right:
            emit(chunk[left:right], base + left)
        for text, start in reversed(trailing):
            emit(text, start)
    return tuple(tokens)


def render(texts: Sequence[str]) -> tuple[str, tuple[Token, ...]]:
    """Join token texts under the whitespace rule; return raw plus tokens."""
    parts: list[str] = []
    tokens: list[Token] = []
    pos = 0
    prev: str | None = None
    for text in texts:
        if prev is not None and text not in NO_SPACE_BEFORE and prev not in NO_SPACE_AFTER:
            parts.append(" ")
            pos += 1
        parts.append(text)
        tokens.append(Token(text, pos, pos + len(text), len(tokens)))
        pos += len(text)
        prev = text
    return "".join(parts), tuple(tokens)


def detokenize(texts: Iterable[str]) -> str:
    return render(tuple(texts))[0]


@dataclass(frozen=True)
class TextField:
    """A raw string plus its token decomposition.

    ``frozen`` marks token indices that transformations must not edit.
    """

    raw: str
    tokens: tuple[Token, ...]
    frozen: frozenset[int] = frozenset()

    def __post_init__(self) -> None:
        last = 0
        for i, tok in enumerate(self.tokens):
            if tok.index != i:
                raise ValueError(f"token {i} carries index {tok.index}")
            if tok.char_start < last:
                raise ValueError(f"token {i} overlaps its predecessor")
            if self.raw[tok.char_start : tok.char_end] != tok.text:
                raise ValueError(f"token {i} text does not match raw at its offsets")
            last = tok.char_end
        bad = [i for i in self.frozen if not 0 <= i < len(self.tokens)]
        if bad:
            raise ValueError(f"frozen indices out of range: {bad}")

    @classmethod
    def from_raw(cls, raw: str, frozen: Iterable[int] = ()) -> "TextField":
        return cls(raw, tokenize(raw), frozenset(frozen))

    @classmethod
    def from_texts(cls, texts: Sequence[str], frozen: Iterable[int] = ()) -> "TextField":
        raw, tokens = render(texts)
        return cls(raw, tokens, frozenset(frozen))

    @property
    def texts(self) -> tuple[str, ...]:
        return tuple(t.text for t in self.tokens)

    def __len__(self) -> int:
        return len(self.tokens)
