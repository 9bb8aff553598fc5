"""Run configuration: JSON file with documented defaults.

An empty config file is valid and yields the all-defaults configuration:
seed 42, classification task, every single transformation the task
supports, no combinations, no validators. CLI flags override config
fields.
"""
from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field as dc_field
from pathlib import Path

from .core.sample import Task
from .errors import ConfigError
from .resources import Resources
from .subpopulation import SliceSpec
from .transforms import PerturbParams, check_combination, split_spec, supported_specs, _FACTORIES

_VALIDATOR_KEYS = {"max_replacement_ratio", "max_perplexity", "min_similarity"}


@dataclass
class TransformSpec:
    name: str
    params: dict = dc_field(default_factory=dict)
    max_outputs: int = 1

    def perturb_params(self) -> PerturbParams:
        kwargs = {
            k: self.params[k]
            for k in ("word_ratio", "max_edits_per_word", "min_word_len")
            if k in self.params
        }
        return PerturbParams(**kwargs)


@dataclass
class Config:
    task: Task = Task.CLASSIFICATION
    seed: int = 42
    dataset_path: str | None = None
    dataset_format: str = "jsonl"
    transformations: list[TransformSpec] = dc_field(default_factory=list)
    combinations: list[list[str]] = dc_field(default_factory=list)
    subpopulations: list[SliceSpec] = dc_field(default_factory=list)
    validators: dict | None = None
    model: str | None = None
    model_params: dict = dc_field(default_factory=dict)
    out_dir: str = "flint-out"
    resources_dir: str | None = None
    overlap_count: int = 20
    attack_budget: int | None = None
    worst_k: int = 3
    annotations_path: str | None = None

    def to_canonical(self) -> dict:
        return {
            "task": self.task.value,
            "seed": self.seed,
            "dataset": {"path": self.dataset_path, "format": self.dataset_format},
            "transformations": [
                {"name": t.name, "params": t.params, "max_outputs": t.max_outputs}
                for t in self.transformations
            ],
            "combinations": self.combinations,
            "subpopulations": [
                {"attribute": s.attribute, "end": s.end, "p": s.p} for s in self.subpopulations
            ],
            "validators": self.validators,
            "model": self.model,
            "model_params": self.model_params,
            "resources_dir": self.resources_dir,
            "overlap_count": self.overlap_count,
            "attack_budget": self.attack_budget,
            "worst_k": self.worst_k,
            "annotations_path": self.annotations_path,
        }

    def hash(self) -> str:
        canon = json.dumps(self.to_canonical(), sort_keys=True, ensure_ascii=False)
        return hashlib.sha256(canon.encode("utf-8")).hexdigest()[:16]


def _parse_transform_entry(entry) -> TransformSpec:
    if isinstance(entry, str):
        return TransformSpec(entry)
    if isinstance(entry, dict) and "name" in entry:
        return TransformSpec(
            entry["name"], dict(entry.get("params", {})), int(entry.get("max_outputs", 1))
        )
    raise ConfigError(f"invalid transformation entry {entry!r}")


def load_config(path: str | Path | None, resources: Resources | None = None) -> Config:
    """Load, default-fill and validate a config file (None -> all defaults)."""
    raw: dict = {}
    if path is not None:
        text = Path(path).read_text(encoding="utf-8").strip()
        if text:
            try:
                raw = json.loads(text)
            except json.JSONDecodeError as exc:
                raise ConfigError(f"config is not valid JSON: {exc.msg} (line {exc.lineno})") from exc
            if not isinstance(raw, dict):
                raise ConfigError("config must be a JSON object")

    config = Config()
    if "task" in raw:
        try:
            config.task = Task(raw["task"])
        except ValueError as exc:
            raise ConfigError(f"unknown task {raw['task']!r}") from exc
    if "seed" in raw:
        config.seed = int(raw["seed"])
    dataset = raw.get("dataset", {})
    config.dataset_path = dataset.get("path")
    config.dataset_format = dataset.get("format", "jsonl")
    config.model = raw.get("model")
    config.model_params = dict(raw.get("model_params", {}))
    config.out_dir = raw.get("out_dir", config.out_dir)
    config.resources_dir = raw.get("resources_dir")
    config.overlap_count = int(raw.get("overlap_count", config.overlap_count))
    config.attack_budget = raw.get("attack_budget")
    config.worst_k = int(raw.get("worst_k", config.worst_k))
    config.annotations_path = raw.get("annotations_path")

    validators = raw.get("validators")
    if validators is not None:
        unknown = set(validators) - _VALIDATOR_KEYS
        if unknown:
            raise ConfigError(f"unknown validator thresholds {sorted(unknown)}")
        config.validators = dict(validators)

    resources = resources or _default_resources(config)

    entries = raw.get("transformations")
    if entries is None:
        config.transformations = [
            TransformSpec(spec) for spec in supported_specs(config.task, resources)
        ]
    else:
        config.transformations = [_parse_transform_entry(e) for e in entries]
    explicit = entries is not None
    for t in config.transformations:
        base = split_spec(t.name)[0]
        if base not in _FACTORIES:
            raise ConfigError(f"unknown transformation {t.name!r}")
        t.perturb_params()  # validates numeric params early
        if explicit:
            from .transforms import create_transform

            transform = create_transform(t.name, resources, t.perturb_params(), t.params)
            if config.task not in transform.tasks:
                raise ConfigError(
                    f"{t.name} does not support task {config.task.value}"
                )

    config.combinations = [list(c) for c in raw.get("combinations", [])]
    for combo in config.combinations:
        check_combination(combo, config.task, resources)

    config.subpopulations = [
        SliceSpec(s["attribute"], s.get("end", "all-matching"), float(s.get("p", 0.2)))
        for s in raw.get("subpopulations", [])
    ]
    return config


def _default_resources(config: Config) -> Resources:
    from .resources import bundled_resources

    if config.resources_dir:
        return Resources.load(config.resources_dir)
    return bundled_resources()
