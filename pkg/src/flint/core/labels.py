"""Span labels, BIO tag handling and label remapping through edit plans.

Remapping rules for a label-preserving trace:

* a span wholly inside one replace edit inherits the edit's full new range;
* replace edits wholly inside a span stretch or shrink it;
* a delete touching a labeled span, a replace cutting a span boundary, or
  an insertion strictly inside a span raises :class:`LabelSplitError`;
* inserted tokens get tag ``O`` / join no span unless the edit carries
  explicit tags.

Relabeling traces remap leniently (clipping instead of raising); the
transformation that declared the relabel owns the final label values.
"""
from __future__ import annotations

from dataclasses import dataclass

from ..errors import LabelSplitError
from .edits import EditPlan


@dataclass(frozen=True)
class SpanLabel:
    """A typed token span ``[start, end)`` on one field."""

    field: str
    start: int
    end: int
    tag: str

    def __post_init__(self) -> None:
        if not 0 <= self.start < self.end:
            raise ValueError(f"bad span [{self.start}, {self.end})")


def is_bio(tags: tuple[str, ...] | list[str]) -> bool:
    return all(t == "O" or t[:2] in ("B-", "I-") for t in tags)


def bio_decode(tags) -> list[tuple[int, int, str]]:
    """BIO tags -> (start, end, type) spans; stray ``I-`` is repaired as ``B-``."""
    spans: list[tuple[int, int, str]] = []
    start, kind = None, None
    for i, tag in enumerate(tags):
        if tag.startswith("I-") and kind == tag[2:]:
            continue
        if start is not None:
            spans.append((start, i, kind))
            start, kind = None, None
        if tag.startswith(("B-", "I-")):
            start, kind = i, tag[2:]
    if start is not None:
        spans.append((start, len(tags), kind))
    return spans


def bio_encode(spans: list[tuple[int, int, str]], length: int) -> list[str]:
    tags = ["O"] * length
    for start, end, kind in spans:
        tags[start] = f"B-{kind}"
        for i in range(start + 1, end):
            tags[i] = f"I-{kind}"
    return tags


def remap_span(plan: EditPlan, start: int, end: int, preserving: bool) -> tuple[int, int] | None:
    """Map an original-coordinate span through ``plan``; None when it vanishes."""
    for ds, de in plan.deletes:
        if ds < end and start < de:
            if preserving:
                raise LabelSplitError(
                    f"delete [{ds}, {de}) cuts labeled span [{start}, {end})"
                )
    covering: tuple[int, int] | None = None
    for rs, re_, ns, ne, _ in plan.replaces:
        if rs < end and start < re_:
            if rs <= start and end <= re_:
                covering = (ns, ne)
            elif start <= rs and re_ <= end:
                pass  # edit inside span: handled positionally below
            elif preserving:
                raise LabelSplitError(
                    f"replace [{rs}, {re_}) cuts labeled span [{start}, {end})"
                )
    if covering is not None:
        return covering
    for pos, _, _, _ in plan.inserts:
        if start < pos < end and preserving:
            raise LabelSplitError(f"insertion at {pos} splits labeled span [{start}, {end})")

    positions: list[int] = []
    for i in range(start, end):
        new = plan.index_map[i]
        if new is not None:
            positions.append(new)
    for rs, re_, ns, ne, _ in plan.replaces:
        if start <= rs and re_ <= end and ne > ns:
            positions.extend((ns, ne - 1))
    if not positions:
        return None
    return min(positions), max(positions) + 1


def remap_tags(tags: tuple[str, ...], plan: EditPlan, preserving: bool) -> tuple[str, ...]:
    """Remap a per-token tag sequence through an edit plan."""
    length = len(plan.new_texts)
    if is_bio(tags):
        spans = bio_decode(tags)
        moved = []
        for s, e, kind in spans:
            out = remap_span(plan, s, e, preserving)
            if out is not None:
                moved.append((out[0], out[1], kind))
        new_tags = bio_encode(moved, length)
        for _, _, ns, ne, explicit in plan.replaces + [
            (p, p, ns, ne, t) for p, ns, ne, t in plan.inserts
        ]:
            if explicit is not None:
                new_tags[ns:ne] = list(explicit)
        return tuple(new_tags)

    new_tags = ["O"] * length
    for i, new in enumerate(plan.index_map):
        if new is not None:
            new_tags[new] = tags[i]
    for rs, re_, ns, ne, explicit in plan.replaces:
        fill = list(explicit) if explicit is not None else [tags[rs]] * (ne - ns)
        new_tags[ns:ne] = fill
    for _, ns, ne, explicit in plan.inserts:
        if explicit is not None:
            new_tags[ns:ne] = list(explicit)
    return tuple(new_tags)


def remap_span_labels(
    labels: tuple[SpanLabel, ...],
    plans: dict[str, EditPlan],
    preserving: bool,
) -> tuple[SpanLabel, ...]:
    out: list[SpanLabel] = []
    for lab in labels:
        plan = plans.get(lab.field)
        if plan is None:
            out.append(lab)
            continue
        moved = remap_span(plan, lab.start, lab.end, preserving)
        if moved is None:
            if preserving:
                raise LabelSplitError(f"labeled span {lab} was removed by a preserving trace")
            continue
        out.append(SpanLabel(lab.field, moved[0], moved[1], lab.tag))
    return tuple(out)
