"""Pipeline stages behind the CLI: transform, slice, validate, evaluate,
attack, report and augment.

Every stage writes its artifacts under the run's output directory plus a
manifest recording the config hash, the seed and per-artifact line counts.
Stages are deterministic: rerunning with an identical config produces
byte-identical files. Samples are processed in dataset order with seeds
derived per (sample, transform), so ordering never affects content.
"""
from __future__ import annotations

import json
from pathlib import Path

from .config import Config, TransformSpec
from .core.dataset import Dataset, load_dataset, sample_to_record
from .core.sample import Task
from .core.seeds import RandomPlan
from .errors import ConfigError, FlintError, NotApplicable
from .models import create_model, evaluate, greedy_attack
from .models.evaluate import EvalResult, compute_metrics
from .report import analyze, plots_data, render
from .resources import Resources, bundled_resources
from .subpopulation import run_slice as make_slice, save_slice
from .transforms import (
    DatasetTransformation,
    GeneratorTransformation,
    TransformOutput,
    create_transform,
)
from .validate import filter_outputs, score_output

MODES = ("transform", "slice", "validate", "evaluate", "attack", "report", "augment")


def safe_name(spec: str) -> str:
    return spec.replace(":", "_").replace("/", "_").replace(" ", "_")


def _stage(stage: str, sample_id: str | None, exc: FlintError):
    where = f"stage {stage}" + (f", sample {sample_id!r}" if sample_id else "")
    raise type(exc)(f"[{where}] {exc}") from exc


class Runner:
    def __init__(self, config: Config, resources: Resources | None = None):
        self.config = config
        self.resources = resources or (
            Resources.load(config.resources_dir) if config.resources_dir else bundled_resources()
        )
        self.plan = RandomPlan(config.seed)
        self.out_dir = Path(config.out_dir)

    # -- shared ----------------------------------------------------------

    def load_data(self) -> Dataset:
        if not self.config.dataset_path:
            raise ConfigError("config has no dataset.path")
        return load_dataset(self.config.dataset_path, self.config.dataset_format, self.config.task)

    def _transform_instances(self) -> list[tuple[TransformSpec, object]]:
        out = []
        for spec in self.config.transformations:
            transform = create_transform(
                spec.name, self.resources, spec.perturb_params(), spec.params
            )
            if self.config.task not in transform.tasks:
                continue
            out.append((spec, transform))
        return out

    def _model(self):
        if not self.config.model:
            raise ConfigError("this mode needs a model spec (--model or config.model)")
        return create_model(self.config.model, self.config.model_params, self.resources)

    def _write_manifest(self, mode: str, counts: dict[str, int]) -> None:
        manifest = {
            "mode": mode,
            "config_hash": self.config.hash(),
            "seed": self.config.seed,
            "counts": dict(sorted(counts.items())),
        }
        path = self.out_dir / "manifest.json"
        path.write_text(
            json.dumps(manifest, ensure_ascii=False, sort_keys=True, indent=2) + "\n",
            encoding="utf-8",
        )

    # -- transform --------------------------------------------------------

    def apply_transform(self, transform, dataset: Dataset, max_outputs: int) -> list[TransformOutput]:
        outputs: list[TransformOutput] = []
        if isinstance(transform, GeneratorTransformation):
            seed = self.plan.seed_for("generated", transform.key())
            return transform.generate(self.config.overlap_count, seed)
        if isinstance(transform, DatasetTransformation):
            k = transform.window
            samples = list(dataset.samples)
            for i in range(0, len(samples) - k + 1, k):
                window = samples[i : i + k]
                seed = self.plan.seed_for(window[0].id, transform.key())
                try:
                    outputs.append(transform.apply_window(window, seed))
                except NotApplicable:
                    continue
            return outputs
        for sample in dataset:
            seed = self.plan.seed_for(sample.id, transform.key())
            try:
                outputs.extend(transform.apply(sample, seed, max_outputs))
            except NotApplicable:
                continue
            except FlintError as exc:
                _stage("transform", sample.id, exc)
        return outputs

    def apply_combination(self, specs: list[str], dataset: Dataset, max_outputs: int) -> list[TransformOutput]:
        """Chain transforms left to right over each kept output."""
        transforms = [create_transform(s, self.resources) for s in specs]
        outputs = self.apply_transform(transforms[0], dataset, max_outputs)
        for transform in transforms[1:]:
            chained: list[TransformOutput] = []
            for output in outputs:
                seed = self.plan.seed_for(output.transformed.id, transform.key())
                try:
                    next_outputs = transform.apply(output.transformed, seed, max_outputs)
                except NotApplicable:
                    continue
                except FlintError as exc:
                    _stage("transform", output.transformed.id, exc)
                for nxt in next_outputs:
                    nxt.original_id = output.original_id
                    nxt.original = output.original
                    nxt.transform = "+".join(specs)
                    chained.append(nxt)
            outputs = chained
        return outputs

    def generate_all(self, dataset: Dataset) -> dict[str, list[TransformOutput]]:
        produced: dict[str, list[TransformOutput]] = {}
        for spec, transform in self._transform_instances():
            produced[transform.key()] = self.apply_transform(transform, dataset, spec.max_outputs)
        for combo in self.config.combinations:
            produced["+".join(combo)] = self.apply_combination(combo, dataset, 1)
        return produced

    def _write_outputs(self, name: str, outputs: list[TransformOutput]) -> tuple[str, int]:
        path = self.out_dir / "transforms" / f"{safe_name(name)}.jsonl"
        path.parent.mkdir(parents=True, exist_ok=True)
        # deterministic ordering by (sample id, variant index), independent
        # of any execution strategy
        outputs = sorted(outputs, key=lambda o: (o.original_id or "", o.transformed.id))
        with path.open("w", encoding="utf-8") as fh:
            for output in outputs:
                record = sample_to_record(output.transformed)
                record["source_id"] = output.original_id
                record["transform"] = output.transform
                fh.write(json.dumps(record, ensure_ascii=False) + "\n")
        return str(path.relative_to(self.out_dir)), len(outputs)

    def run_transform(self) -> dict[str, list[TransformOutput]]:
        dataset = self.load_data()
        self.out_dir.mkdir(parents=True, exist_ok=True)
        produced = self.generate_all(dataset)
        counts: dict[str, int] = {}
        for name, outputs in produced.items():
            rel, n = self._write_outputs(name, outputs)
            counts[rel] = n
        self._write_manifest("transform", counts)
        return produced

    # -- slice -------------------------------------------------------------

    def run_slice(self) -> None:
        dataset = self.load_data()
        if not self.config.subpopulations:
            raise ConfigError("config has no subpopulations to slice by")
        self.out_dir.mkdir(parents=True, exist_ok=True)
        (self.out_dir / "slices").mkdir(exist_ok=True)
        counts: dict[str, int] = {}
        for spec in self.config.subpopulations:
            slice_ = make_slice(dataset, spec, self.resources)
            path = self.out_dir / "slices" / f"{safe_name(spec.key())}.jsonl"
            save_slice(slice_, path)
            counts[str(path.relative_to(self.out_dir))] = len(slice_) + 1
        self._write_manifest("slice", counts)

    # -- validate ------------------------------------------------------------

    def run_validate(self) -> None:
        dataset = self.load_data()
        self.out_dir.mkdir(parents=True, exist_ok=True)
        produced = self.generate_all(dataset)
        scores_path = self.out_dir / "validation_scores.jsonl"
        rejects_path = self.out_dir / "validation_rejections.jsonl"
        counts = {"validation_scores.jsonl": 0, "validation_rejections.jsonl": 0}
        with scores_path.open("w", encoding="utf-8") as sfh, rejects_path.open(
            "w", encoding="utf-8"
        ) as rfh:
            for name in sorted(produced):
                outputs = produced[name]
                for output in outputs:
                    output.validator_scores.update(score_output(output))
                result = filter_outputs(outputs, self.config.validators)
                for output in outputs:
                    record = {
                        "id": output.transformed.id,
                        "transform": name,
                        "scores": dict(sorted(output.validator_scores.items())),
                    }
                    sfh.write(json.dumps(record, ensure_ascii=False) + "\n")
                    counts["validation_scores.jsonl"] += 1
                for rejection in result.rejections:
                    rfh.write(json.dumps(rejection.to_record(), ensure_ascii=False) + "\n")
                    counts["validation_rejections.jsonl"] += 1
        self._write_manifest("validate", counts)

    # -- evaluate -------------------------------------------------------------

    def run_evaluate(self) -> list[EvalResult]:
        dataset = self.load_data()
        model = self._model()
        self.out_dir.mkdir(parents=True, exist_ok=True)
        produced = self.generate_all(dataset)
        if self.config.validators is not None:
            produced = {
                name: filter_outputs(outputs, self.config.validators).kept
                for name, outputs in produced.items()
            }
        produced = {name: outputs for name, outputs in produced.items() if outputs}
        results = evaluate(model, dataset, produced)
        path = self.out_dir / "eval_results.json"
        path.write_text(
            json.dumps(
                [r.to_record() for r in results], ensure_ascii=False, sort_keys=True, indent=2
            )
            + "\n",
            encoding="utf-8",
        )
        self._write_manifest("evaluate", {"eval_results.json": len(results)})
        return results

    # -- attack ----------------------------------------------------------------

    def run_attack(self) -> list[dict]:
        dataset = self.load_data()
        if dataset.task is not Task.CLASSIFICATION:
            raise ConfigError("attack mode supports classification datasets only")
        model = self._model()
        self.out_dir.mkdir(parents=True, exist_ok=True)
        records = []
        for sample in dataset:
            try:
                record = greedy_attack(
                    model, sample, self.resources.synonyms, budget=self.config.attack_budget
                )
            except FlintError as exc:
                _stage("attack", sample.id, exc)
            records.append(record.to_record())
        path = self.out_dir / "attack_records.jsonl"
        with path.open("w", encoding="utf-8") as fh:
            for record in records:
                fh.write(json.dumps(record, ensure_ascii=False) + "\n")
        self._write_manifest("attack", {"attack_records.jsonl": len(records)})
        return records

    # -- report -----------------------------------------------------------------

    def _slice_rows(self, dataset: Dataset, model) -> list[dict]:
        rows = []
        for spec in self.config.subpopulations:
            slice_ = make_slice(dataset, spec, self.resources)
            members = [s for s in dataset if s.id in set(slice_.member_ids)]
            predictions = model.predict_with_scores(members)[0] if members else []
            rows.append(
                {
                    "slice": spec.key(),
                    "n": len(members),
                    "metrics": compute_metrics(members, predictions),
                }
            )
        return rows

    def _load_annotations(self) -> dict[str, dict[str, float]]:
        if not self.config.annotations_path:
            return {}
        annotations: dict[str, dict[str, float]] = {}
        for line in Path(self.config.annotations_path).read_text(encoding="utf-8").splitlines():
            if not line.strip() or line.startswith("#"):
                continue
            name, _, rest = line.partition("\t")
            values = rest.split()
            if len(values) == 2:
                annotations[name] = {
                    "plausibility": float(values[0]),
                    "grammaticality": float(values[1]),
                }
        return annotations

    def run_report(self) -> None:
        results_path = self.out_dir / "eval_results.json"
        if not results_path.exists():
            raise ConfigError(f"no eval_results.json in {self.out_dir}; run evaluate first")
        results = [
            EvalResult.from_record(o) for o in json.loads(results_path.read_text(encoding="utf-8"))
        ]
        slices: list[dict] = []
        if self.config.subpopulations and self.config.model:
            slices = self._slice_rows(self.load_data(), self._model())
        attack_records: list[dict] = []
        attack_path = self.out_dir / "attack_records.jsonl"
        if attack_path.exists():
            attack_records = [
                json.loads(line)
                for line in attack_path.read_text(encoding="utf-8").splitlines()
                if line.strip()
            ]
        validator_scores: dict[str, list[dict]] = {}
        scores_path = self.out_dir / "validation_scores.jsonl"
        if scores_path.exists():
            for line in scores_path.read_text(encoding="utf-8").splitlines():
                if line.strip():
                    record = json.loads(line)
                    validator_scores.setdefault(record["transform"], []).append(record["scores"])
        report = analyze(
            results,
            slices,
            attack_records,
            model_id=self.config.model or "unspecified",
            dataset_id=self.config.dataset_path or "unspecified",
            worst_k=self.config.worst_k,
            validator_scores=validator_scores,
            annotations=self._load_annotations(),
        )
        counts = {}
        for fmt, filename in (("json", "report.json"), ("markdown", "report.md"), ("latex", "report.tex")):
            text = render(report, fmt)
            (self.out_dir / filename).write_text(text, encoding="utf-8")
            counts[filename] = len(text.splitlines())
        plots = plots_data(report)
        (self.out_dir / "plots.json").write_text(plots, encoding="utf-8")
        counts["plots.json"] = len(plots.splitlines())
        self._write_manifest("report", counts)

    # -- augment -----------------------------------------------------------------

    def run_augment(self) -> None:
        dataset = self.load_data()
        self.out_dir.mkdir(parents=True, exist_ok=True)
        produced = self.generate_all(dataset)
        thresholds = self.config.validators  # None -> keep everything
        path = self.out_dir / "augmented.jsonl"
        kept_count = 0
        with path.open("w", encoding="utf-8") as fh:
            for sample in dataset:
                fh.write(json.dumps(sample_to_record(sample), ensure_ascii=False) + "\n")
            for name in sorted(produced):
                result = filter_outputs(produced[name], thresholds)
                for output in result.kept:
                    record = sample_to_record(output.transformed)
                    record["source_id"] = output.original_id
                    record["transform"] = output.transform
                    fh.write(json.dumps(record, ensure_ascii=False) + "\n")
                    kept_count += 1
        self._write_manifest("augment", {"augmented.jsonl": len(dataset) + kept_count})


def run_pipeline(config: Config, mode: str, resources: Resources | None = None):
    if mode not in MODES:
        raise ConfigError(f"unknown mode {mode!r}; choose from {MODES}")
    runner = Runner(config, resources)
    return getattr(runner, f"run_{mode}")()
