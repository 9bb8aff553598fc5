"""Datasets and JSONL/CSV loading, verification and saving.

JSONL schemas (UTF-8, one object per line):

* classification: ``{"id", "text", "label"}``
* pair-classification: ``{"id", "premise", "hypothesis", "label"}`` with
  label in {entailment, neutral, contradiction}
* sequence-labeling: ``{"id", "tokens": [...], "tags": [...]}`` (BIO or
  plain per-token tags)
* aspect-sentiment: ``{"id", "text", "aspects": [{"term", "start", "end",
  "polarity"}]}`` with character offsets into ``text`` that must align to
  token boundaries

CSV is accepted for classification only, columns ``id,text,label``.
Unknown keys in JSONL records are ignored, so transformed files carrying
provenance fields load back with the same schemas.
"""
from __future__ import annotations

import csv
import json
from dataclasses import dataclass, field as dc_field
from pathlib import Path
from typing import Iterable

from ..errors import ConfigError, DuplicateIdError, SchemaError
from .labels import SpanLabel
from .sample import NLI_LABELS, POLARITIES, Sample, Task
from .tokens import TextField

FORMATS = ("jsonl", "csv")


@dataclass
class Dataset:
    name: str = dc_field(compare=False, default="")
    task: Task = Task.CLASSIFICATION
    samples: tuple[Sample, ...] = ()
    provenance: dict = dc_field(compare=False, default_factory=dict)

    def __post_init__(self) -> None:
        seen: set[str] = set()
        for s in self.samples:
            if s.id in seen:
                raise DuplicateIdError(f"duplicate sample id {s.id!r}")
            seen.add(s.id)
            if s.task is not self.task:
                raise SchemaError(f"sample {s.id!r} has task {s.task.value}, dataset is {self.task.value}")

    def __len__(self) -> int:
        return len(self.samples)

    def __iter__(self):
        return iter(self.samples)

    def with_samples(self, samples: Iterable[Sample], lineage: str | None = None) -> "Dataset":
        prov = dict(self.provenance)
        if lineage:
            prov["lineage"] = list(prov.get("lineage", ())) + [lineage]
        return Dataset(self.name, self.task, tuple(samples), prov)


def _need(obj: dict, key: str, line: int, kind: type | tuple = str):
    if key not in obj:
        raise SchemaError("missing key", line=line, field=key)
    value = obj[key]
    if not isinstance(value, kind):
        raise SchemaError(f"wrong type {type(value).__name__}", line=line, field=key)
    return value


def _char_span_to_tokens(field_: TextField, start: int, end: int) -> tuple[int, int] | None:
    first = last = None
    for tok in field_.tokens:
        if tok.char_start == start:
            first = tok.index
        if tok.char_end == end:
            last = tok.index
    if first is None or last is None or last < first:
        return None
    return first, last + 1


def _parse_record(obj: dict, task: Task, line: int) -> Sample:
    sid = _need(obj, "id", line, (str, int))
    sid = str(sid)
    if task is Task.CLASSIFICATION:
        text = _need(obj, "text", line)
        label = _need(obj, "label", line)
        return Sample(sid, task, {"text": TextField.from_raw(text)}, label)
    if task is Task.PAIR:
        premise = _need(obj, "premise", line)
        hypothesis = _need(obj, "hypothesis", line)
        label = _need(obj, "label", line)
        if label not in NLI_LABELS:
            raise SchemaError(f"label {label!r} not in {NLI_LABELS}", line=line, field="label")
        fields = {
            "premise": TextField.from_raw(premise),
            "hypothesis": TextField.from_raw(hypothesis),
        }
        return Sample(sid, task, fields, label)
    if task is Task.SEQUENCE:
        tokens = _need(obj, "tokens", line, list)
        tags = _need(obj, "tags", line, list)
        if len(tokens) != len(tags):
            raise SchemaError(
                f"{len(tags)} tags for {len(tokens)} tokens", line=line, field="tags"
            )
        if not all(isinstance(t, str) and t.strip() for t in tokens):
            raise SchemaError("tokens must be non-empty strings", line=line, field="tokens")
        field_ = TextField.from_texts(tokens)
        return Sample(sid, task, {"text": field_}, tuple(tags))
    if task is Task.ABSA:
        text = _need(obj, "text", line)
        aspects = _need(obj, "aspects", line, list)
        field_ = TextField.from_raw(text)
        labels = []
        for asp in aspects:
            if not isinstance(asp, dict):
                raise SchemaError("aspect must be an object", line=line, field="aspects")
            start = _need(asp, "start", line, int)
            end = _need(asp, "end", line, int)
            polarity = _need(asp, "polarity", line)
            term = _need(asp, "term", line)
            if polarity not in POLARITIES:
                raise SchemaError(f"polarity {polarity!r} unknown", line=line, field="aspects")
            if text[start:end] != term:
                raise SchemaError(
                    f"term {term!r} does not match text[{start}:{end}]", line=line, field="aspects"
                )
            span = _char_span_to_tokens(field_, start, end)
            if span is None:
                raise SchemaError(
                    f"aspect offsets [{start}, {end}) do not align to token boundaries",
                    line=line,
                    field="aspects",
                )
            labels.append(SpanLabel("text", span[0], span[1], polarity))
        return Sample(sid, task, {"text": field_}, tuple(labels))
    raise ConfigError(f"unknown task {task}")


def _record_for(sample: Sample) -> dict:
    if sample.task is Task.CLASSIFICATION:
        return {"id": sample.id, "text": sample.text.raw, "label": sample.label}
    if sample.task is Task.PAIR:
        return {
            "id": sample.id,
            "premise": sample.fields["premise"].raw,
            "hypothesis": sample.fields["hypothesis"].raw,
            "label": sample.label,
        }
    if sample.task is Task.SEQUENCE:
        return {"id": sample.id, "tokens": list(sample.text.texts), "tags": list(sample.label)}
    aspects = []
    for lab in sample.label:
        field_ = sample.fields[lab.field]
        start = field_.tokens[lab.start].char_start
        end = field_.tokens[lab.end - 1].char_end
        aspects.append(
            {"term": field_.raw[start:end], "start": start, "end": end, "polarity": lab.tag}
        )
    return {"id": sample.id, "text": sample.text.raw, "aspects": aspects}


def sample_to_record(sample: Sample) -> dict:
    return _record_for(sample)


def record_to_sample(obj: dict, task: Task, line: int = 0) -> Sample:
    return _parse_record(obj, task, line)


def load_dataset(path: str | Path, format: str, task: Task | str) -> Dataset:
    path = Path(path)
    task = Task(task)
    if format not in FORMATS:
        raise ConfigError(f"unknown dataset format {format!r}")
    if not path.exists():
        raise SchemaError(f"dataset file not found: {path}")
    samples: list[Sample] = []
    if format == "csv":
        if task is not Task.CLASSIFICATION:
            raise ConfigError("csv datasets are supported for classification only")
        with path.open(newline="", encoding="utf-8") as fh:
            reader = csv.DictReader(fh)
            if reader.fieldnames != ["id", "text", "label"]:
                raise SchemaError(f"csv header must be id,text,label, got {reader.fieldnames}", line=1)
            for i, row in enumerate(reader, start=2):
                samples.append(_parse_record(row, task, i))
    else:
        with path.open(encoding="utf-8") as fh:
            for i, line in enumerate(fh, start=1):
                line = line.strip()
                if not line:
                    continue
                try:
                    obj = json.loads(line)
                except json.JSONDecodeError as exc:
                    raise SchemaError(f"invalid JSON: {exc.msg}", line=i) from exc
                if not isinstance(obj, dict):
                    raise SchemaError("record must be an object", line=i)
                samples.append(_parse_record(obj, task, i))
    return Dataset(path.stem, task, tuple(samples), {"source": str(path)})


def save_dataset(dataset: Dataset, path: str | Path, format: str = "jsonl") -> None:
    path = Path(path)
    if format not in FORMATS:
        raise ConfigError(f"unknown dataset format {format!r}")
    if format == "csv":
        if dataset.task is not Task.CLASSIFICATION:
            raise ConfigError("csv datasets are supported for classification only")
        with path.open("w", newline="", encoding="utf-8") as fh:
            writer = csv.writer(fh)
            writer.writerow(["id", "text", "label"])
            for s in dataset:
                writer.writerow([s.id, s.text.raw, s.label])
        return
    with path.open("w", encoding="utf-8") as fh:
        for s in dataset:
            fh.write(json.dumps(_record_for(s), ensure_ascii=False) + "\n")
