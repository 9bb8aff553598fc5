"""Built-in baseline models: deterministic stand-ins for real model zoos.

The keyword classifier's hit rule is deliberately simple and documented,
because external adapters may reimplement it for conformance testing: a
hit is a regex match of the keyword with no adjacent ASCII alphanumerics,
exact case unless ``case_sensitive`` is false.
"""
from __future__ import annotations

import re

from ..core.sample import Sample, Task
from ..errors import ConfigError
from ..resources import Gazetteer


def keyword_hits(text: str, keyword: str, case_sensitive: bool = True) -> int:
    if not case_sensitive:
        text, keyword = text.lower(), keyword.lower()
    pattern = rf"(?<![A-Za-z0-9]){re.escape(keyword)}(?![A-Za-z0-9])"
    return len(re.findall(pattern, text))


def classify_text(sample: Sample) -> str:
    if sample.task is Task.PAIR:
        return sample.fields["premise"].raw + " " + sample.fields["hypothesis"].raw
    return sample.text.raw


class MajorityModel:
    """Predicts one constant class label."""

    def __init__(self, label: str):
        self.label = label
        self.name = "builtin:majority"

    def predict_with_scores(self, samples: list[Sample]):
        return [self.label] * len(samples), [[1.0] for _ in samples]

    def predict(self, samples: list[Sample]) -> list:
        return self.predict_with_scores(samples)[0]


class KeywordModel:
    """Counts keyword hits per class; most hits wins, ties -> majority class.

    Per-class scores are hit counts normalized to sum one; when nothing
    hits, the majority class scores 1.
    """

    def __init__(
        self,
        class_keywords: dict[str, list[str]],
        majority: str,
        case_sensitive: bool = True,
    ):
        if majority not in class_keywords:
            raise ConfigError(f"majority class {majority!r} missing from keyword classes")
        self.class_keywords = {c: list(kws) for c, kws in class_keywords.items()}
        self.majority = majority
        self.case_sensitive = case_sensitive
        self.classes = sorted(class_keywords)
        mode = "cs" if case_sensitive else "ci"
        self.name = f"builtin:keyword:{mode}"

    def _hits(self, text: str) -> list[int]:
        return [
            sum(keyword_hits(text, kw, self.case_sensitive) for kw in self.class_keywords[c])
            for c in self.classes
        ]

    def predict_with_scores(self, samples: list[Sample]):
        predictions: list[str] = []
        scores: list[list[float]] = []
        for sample in samples:
            hits = self._hits(classify_text(sample))
            total = sum(hits)
            if total == 0:
                predictions.append(self.majority)
                scores.append([1.0 if c == self.majority else 0.0 for c in self.classes])
                continue
            best = max(hits)
            winners = [c for c, h in zip(self.classes, hits) if h == best]
            predictions.append(winners[0] if len(winners) == 1 else self.majority)
            scores.append([h / total for h in hits])
        return predictions, scores

    def predict(self, samples: list[Sample]) -> list:
        return self.predict_with_scores(samples)[0]


class GazetteerTagger:
    """Longest-match BIO tagging from the main gazetteer."""

    def __init__(self, gazetteer: Gazetteer):
        self.gazetteer = gazetteer
        self.name = "builtin:gazetteer"

    def predict_with_scores(self, samples: list[Sample]):
        predictions = []
        for sample in samples:
            texts = sample.text.texts
            tags = ["O"] * len(texts)
            for start, end, cat in self.gazetteer.longest_match(texts):
                tags[start] = f"B-{cat}"
                for i in range(start + 1, end):
                    tags[i] = f"I-{cat}"
            predictions.append(tags)
        return predictions, None

    def predict(self, samples: list[Sample]) -> list:
        return self.predict_with_scores(samples)[0]


def create_builtin(name: str, model_params: dict, resources) -> object:
    if name == "majority":
        label = model_params.get("label")
        if not label:
            raise ConfigError("builtin:majority needs model_params.label")
        return MajorityModel(label)
    if name == "keyword":
        classes = model_params.get("classes")
        majority = model_params.get("majority")
        if not classes or not majority:
            raise ConfigError("builtin:keyword needs model_params.classes and .majority")
        return KeywordModel(classes, majority, model_params.get("case_sensitive", True))
    if name == "gazetteer":
        return GazetteerTagger(resources.gazetteer)
    raise ConfigError(f"unknown builtin model {name!r}")
