"""Atomic token edits, edit traces and their application.

Edits address token indices of the *original* field. A trace's edits must
not overlap; insertions may share a position (applied in list order) but
may not fall strictly inside a replaced or deleted span.

Applying edits yields an :class:`EditPlan` that records, besides the new
token texts, everything label remapping needs: the index map for surviving
tokens and the new-coordinate extent of every replace/insert/delete.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Sequence, Union

from ..errors import BoundsError, OverlapError
from .tokens import TextField


@dataclass(frozen=True)
class ReplaceSpan:
    start: int
    end: int
    tokens: tuple[str, ...]
    tags: tuple[str, ...] | None = None  # explicit tags for the new tokens

    def __post_init__(self):
        if self.tags is not None and len(self.tags) != len(self.tokens):
            raise ValueError("tags must match new token count")


@dataclass(frozen=True)
class InsertAt:
    pos: int
    tokens: tuple[str, ...]
    tags: tuple[str, ...] | None = None

    def __post_init__(self):
        if not self.tokens:
            raise ValueError("insertion must add at least one token")
        if self.tags is not None and len(self.tags) != len(self.tokens):
            raise ValueError("tags must match new token count")


@dataclass(frozen=True)
class DeleteSpan:
    start: int
    end: int


Edit = Union[ReplaceSpan, InsertAt, DeleteSpan]


@dataclass(frozen=True)
class LabelEdit:
    """Whether a trace preserves labels or rewrites them, and why."""

    kind: str  # "preserving" | "relabeled"
    description: str = ""

    @property
    def preserving(self) -> bool:
        return self.kind == "preserving"


PRESERVING = LabelEdit("preserving")


def relabeled(description: str) -> LabelEdit:
    return LabelEdit("relabeled", description)


@dataclass(frozen=True)
class EditTrace:
    """Ordered atomic edits per field, plus the label-edit declaration."""

    field_edits: Mapping[str, tuple[Edit, ...]]
    label_edit: LabelEdit = PRESERVING

    def edits_for(self, name: str) -> tuple[Edit, ...]:
        return tuple(self.field_edits.get(name, ()))


@dataclass
class EditPlan:
    """Result of applying edits to one field's token list."""

    new_texts: list[str]
    # original token index -> new index, or None when replaced/deleted
    index_map: list[int | None]
    # (orig_start, orig_end, new_start, new_end, tags)
    replaces: list[tuple[int, int, int, int, tuple[str, ...] | None]] = field(default_factory=list)
    # (orig_pos, new_start, new_end, tags)
    inserts: list[tuple[int, int, int, tuple[str, ...] | None]] = field(default_factory=list)
    # (orig_start, orig_end)
    deletes: list[tuple[int, int]] = field(default_factory=list)

    @classmethod
    def identity(cls, n: int) -> "EditPlan":
        return cls(new_texts=[], index_map=list(range(n)))


def _validate(n: int, edits: Sequence[Edit]) -> None:
    spans: list[tuple[int, int]] = []
    for e in edits:
        if isinstance(e, InsertAt):
            if not 0 <= e.pos <= n:
                raise BoundsError(f"insert position {e.pos} outside [0, {n}]")
        else:
            if not 0 <= e.start < e.end <= n:
                raise BoundsError(f"span [{e.start}, {e.end}) outside field of {n} tokens")
            spans.append((e.start, e.end))
    spans.sort()
    for (s1, e1), (s2, e2) in zip(spans, spans[1:]):
        if s2 < e1:
            raise OverlapError(f"edits overlap: [{s1}, {e1}) and [{s2}, {e2})")
    for e in edits:
        if isinstance(e, InsertAt):
            for s, t in spans:
                if s < e.pos < t:
                    raise OverlapError(f"insert at {e.pos} falls inside edited span [{s}, {t})")


def apply_token_edits(texts: Sequence[str], edits: Sequence[Edit]) -> EditPlan:
    """Apply ``edits`` (original coordinates) to a token text sequence."""
    n = len(texts)
    _validate(n, edits)

    inserts_at: dict[int, list[InsertAt]] = {}
    span_at: dict[int, Edit] = {}
    for e in edits:
        if isinstance(e, InsertAt):
            inserts_at.setdefault(e.pos, []).append(e)
        else:
            span_at[e.start] = e

    plan = EditPlan(new_texts=[], index_map=[None] * n)
    pos = 0
    while pos <= n:
        for ins in inserts_at.get(pos, ()):
            start = len(plan.new_texts)
            plan.new_texts.extend(ins.tokens)
            plan.inserts.append((pos, start, len(plan.new_texts), ins.tags))
        if pos == n:
            break
        edit = span_at.get(pos)
        if isinstance(edit, ReplaceSpan):
            start = len(plan.new_texts)
            plan.new_texts.extend(edit.tokens)
            plan.replaces.append((edit.start, edit.end, start, len(plan.new_texts), edit.tags))
            pos = edit.end
        elif isinstance(edit, DeleteSpan):
            plan.deletes.append((edit.start, edit.end))
            pos = edit.end
        else:
            plan.index_map[pos] = len(plan.new_texts)
            plan.new_texts.append(texts[pos])
            pos += 1
    return plan


def apply_edits(field_: TextField, edits: Sequence[Edit]) -> TextField:
    """Return the transformed field; raw text re-rendered by the whitespace rule."""
    plan = apply_token_edits(field_.texts, edits)
    frozen = frozenset(
        plan.index_map[i] for i in field_.frozen if plan.index_map[i] is not None
    )
    return TextField.from_texts(plan.new_texts, frozen)
