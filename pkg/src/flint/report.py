"""Robustness report: aggregate evaluation results and render them.

Rows are grouped by linguistic level; within a group they sort by the
primary metric's degradation, worst first. Rendering is deterministic:
markdown and LaTeX tables use the paired "Ori. -> Trans." two-column
convention per metric, and JSON is the canonical machine form. A
``plots.json`` data file carries per-transform degradation series for
external plotting; no charts are rendered here.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field as dc_field

from .errors import ConfigError, EmptyReportError
from .models.evaluate import EvalResult
from .transforms import split_spec

GROUPS = (
    "morphology",
    "paradigmatic-relation",
    "syntax",
    "pragmatics",
    "model-related",
    "task-specific",
)

_GROUP_OF = {
    "SwapPrefix": "morphology",
    "SwapMultiPOS": "morphology",
    "Tense": "morphology",
    "Contraction": "morphology",
    "SwapLonger": "morphology",
    "SpellingError": "morphology",
    "Typos": "morphology",
    "EntTypos": "morphology",
    "Keyboard": "morphology",
    "Ocr": "morphology",
    "WordCase": "morphology",
    "SwapSyn": "paradigmatic-relation",
    "SwapAnt": "paradigmatic-relation",
    "AddNeg": "paradigmatic-relation",
    "RmvNeg": "paradigmatic-relation",
    "SwapNum": "paradigmatic-relation",
    "SwapNamedEnt": "syntax",
    "OOV": "syntax",
    "CrossCategory": "syntax",
    "DoubleDenial": "syntax",
    "RevTgt": "syntax",
    "RevNon": "syntax",
    "InsertAdv": "syntax",
    "SwapSpecialEnt": "syntax",
    "AddSum": "pragmatics",
    "AppendIrr": "pragmatics",
    "TwitterType": "pragmatics",
    "ConcatSent": "pragmatics",
    "AddPunc": "pragmatics",
    "RmvPunc": "pragmatics",
    "Prejudice": "pragmatics",
    "BackTrans": "model-related",
    "MLMSuggestion": "model-related",
    "Overlap": "model-related",
    "AddDiff": "task-specific",
    "SwapAnt-NLI": "task-specific",
    "AddSent": "task-specific",
    "NumWord": "task-specific",
}


def group_of(transform: str) -> str:
    head = transform.split("+", 1)[0]  # combinations group by first member
    return _GROUP_OF.get(split_spec(head)[0], "task-specific")


def _primary_drop(result: EvalResult) -> float:
    if not result.degradation:
        return 0.0
    for name in ("accuracy", "span_f1", "macro_f1"):
        if name in result.degradation:
            return result.degradation[name]
    return max(result.degradation.values())


@dataclass
class RobustnessReport:
    model_id: str
    dataset_id: str
    groups: dict[str, list[EvalResult]]
    worst: list[EvalResult]
    subpopulations: list[dict] = dc_field(default_factory=list)
    attack: dict | None = None
    validator_stats: dict[str, dict[str, float]] = dc_field(default_factory=dict)
    annotations: dict[str, dict[str, float]] = dc_field(default_factory=dict)

    @property
    def rows(self) -> list[EvalResult]:
        return [r for g in GROUPS for r in self.groups.get(g, [])]


def analyze(
    results: list[EvalResult],
    slices: list[dict] | None = None,
    attack_records: list[dict] | None = None,
    model_id: str = "model",
    dataset_id: str = "dataset",
    worst_k: int = 3,
    validator_scores: dict[str, list[dict[str, float]]] | None = None,
    annotations: dict[str, dict[str, float]] | None = None,
) -> RobustnessReport:
    """Aggregate results into a report; at least one input must be non-empty."""
    slices = slices or []
    attack_records = attack_records or []
    if not results and not slices and not attack_records:
        raise EmptyReportError("nothing to report: no results, slices or attack records")

    # degradation is recomputed here so loaded result files cannot drift
    results = [
        EvalResult(
            r.transform,
            r.original,
            r.transformed,
            (
                {k: r.original[k] - r.transformed.get(k, 0.0) for k in r.original}
                if r.original
                else None
            ),
            r.n_original,
            r.n_transformed,
        )
        for r in results
    ]

    groups: dict[str, list[EvalResult]] = {g: [] for g in GROUPS}
    for result in results:
        groups[group_of(result.transform)].append(result)
    for rows in groups.values():
        rows.sort(key=lambda r: (-_primary_drop(r), r.transform))

    ranked = sorted(results, key=lambda r: (-_primary_drop(r), r.transform))
    worst = [r for r in ranked if r.degradation][:worst_k]

    attack_summary = None
    if attack_records:
        successes = [r for r in attack_records if r.get("success")]
        attack_summary = {
            "n": len(attack_records),
            "success_rate": len(successes) / len(attack_records),
            "mean_queries": sum(r.get("queries", 0) for r in attack_records) / len(attack_records),
            "mean_words_changed": (
                sum(r.get("words_changed", 0) for r in successes) / len(successes)
                if successes
                else 0.0
            ),
        }

    validator_stats: dict[str, dict[str, float]] = {}
    for transform, score_dicts in (validator_scores or {}).items():
        merged: dict[str, list[float]] = {}
        for scores in score_dicts:
            for metric, value in scores.items():
                merged.setdefault(metric, []).append(value)
        validator_stats[transform] = {
            metric: sum(vals) / len(vals) for metric, vals in sorted(merged.items())
        }

    return RobustnessReport(
        model_id,
        dataset_id,
        groups,
        worst,
        slices,
        attack_summary,
        validator_stats,
        annotations or {},
    )


def _fmt(value: float | None) -> str:
    return "-" if value is None else f"{100 * value:.2f}"


def _pair(result: EvalResult, metric: str) -> str:
    trans = result.transformed.get(metric)
    orig = (result.original or {}).get(metric)
    if orig is None:
        return f"- -> {_fmt(trans)}" if trans is not None else "-"
    return f"{_fmt(orig)} -> {_fmt(trans)}"


def _metrics_in(results: list[EvalResult]) -> list[str]:
    names: list[str] = []
    for r in results:
        for name in r.transformed:
            if name not in names:
                names.append(name)
    return names


def _to_json(report: RobustnessReport) -> str:
    payload = {
        "model": report.model_id,
        "dataset": report.dataset_id,
        "groups": {
            g: [r.to_record() for r in rows]
            for g, rows in report.groups.items()
            if rows
        },
        "worst": [r.to_record() for r in report.worst],
        "subpopulations": report.subpopulations,
        "attack": report.attack,
        "validator_stats": report.validator_stats,
        "annotations": report.annotations,
    }
    return json.dumps(payload, ensure_ascii=False, sort_keys=True, indent=2) + "\n"


def _row_annotation(report: RobustnessReport, transform: str) -> str:
    ann = report.annotations.get(transform) or report.annotations.get(split_spec(transform)[0])
    if not ann:
        return ""
    parts = [f"{k}={v:.2f}" for k, v in sorted(ann.items())]
    return " (" + ", ".join(parts) + ")"


def _to_markdown(report: RobustnessReport) -> str:
    lines = [f"# Robustness report", "", f"- model: `{report.model_id}`", f"- dataset: `{report.dataset_id}`", ""]
    if report.worst:
        lines.append("## Worst transformations by degradation")
        lines.append("")
        for r in report.worst:
            lines.append(f"1. **{r.transform}** (drop {_fmt(_primary_drop(r))})")
        lines.append("")
    for group in GROUPS:
        rows = report.groups.get(group, [])
        if not rows:
            continue
        metrics = _metrics_in(rows)
        lines.append(f"## {group}")
        lines.append("")
        header = ["Transform", "n"] + [f"{m} (Ori. -> Trans.)" for m in metrics] + ["drop"]
        lines.append("| " + " | ".join(header) + " |")
        lines.append("|" + "---|" * len(header))
        for r in rows:
            cells = [r.transform + _row_annotation(report, r.transform), str(r.n_transformed)]
            cells += [_pair(r, m) for m in metrics]
            cells.append(_fmt(_primary_drop(r)) if r.degradation else "-")
            lines.append("| " + " | ".join(cells) + " |")
        lines.append("")
    if report.subpopulations:
        lines.append("## Subpopulations")
        lines.append("")
        lines.append("| Slice | n | metrics |")
        lines.append("|---|---|---|")
        for entry in report.subpopulations:
            metrics = ", ".join(f"{k}={_fmt(v)}" for k, v in sorted(entry.get("metrics", {}).items()))
            lines.append(f"| {entry['slice']} | {entry['n']} | {metrics} |")
        lines.append("")
    if report.attack:
        a = report.attack
        lines.append("## Attack")
        lines.append("")
        lines.append(
            f"- success rate {a['success_rate']:.2f} over {a['n']} samples, "
            f"mean queries {a['mean_queries']:.1f}, "
            f"mean words changed {a['mean_words_changed']:.1f}"
        )
        lines.append("")
    if report.validator_stats:
        lines.append("## Validator scores (means)")
        lines.append("")
        for transform, stats in sorted(report.validator_stats.items()):
            pretty = ", ".join(f"{k}={v:.3f}" for k, v in stats.items())
            lines.append(f"- {transform}: {pretty}")
        lines.append("")
    return "\n".join(lines)


def _tex_escape(text: str) -> str:
    out = text.replace("\\", "\\textbackslash{}")
    for c in "&%$#_{}":
        out = out.replace(c, "\\" + c)
    return out.replace("->", "$\\rightarrow$")


def _to_latex(report: RobustnessReport) -> str:
    lines = [
        "% robustness report",
        f"% model: {report.model_id}  dataset: {report.dataset_id}",
    ]
    for group in GROUPS:
        rows = report.groups.get(group, [])
        if not rows:
            continue
        metrics = _metrics_in(rows)
        ncols = 2 + len(metrics) + 1
        lines.append(f"\\begin{{table}}[t]")
        lines.append(f"\\caption{{{_tex_escape(group)}}}")
        lines.append("\\begin{tabular}{l" + "c" * (ncols - 1) + "}")
        lines.append("\\toprule")
        header = ["Transform", "n"] + [f"{_tex_escape(m)} (Ori. $\\rightarrow$ Trans.)" for m in metrics] + ["Drop"]
        lines.append(" & ".join(header) + " \\\\")
        lines.append("\\midrule")
        for r in rows:
            cells = [_tex_escape(r.transform), str(r.n_transformed)]
            cells += [_tex_escape(_pair(r, m)) for m in metrics]
            cells.append(_fmt(_primary_drop(r)) if r.degradation else "-")
            lines.append(" & ".join(cells) + " \\\\")
        lines.append("\\bottomrule")
        lines.append("\\end{tabular}")
        lines.append("\\end{table}")
    if report.subpopulations:
        lines.append("\\begin{table}[t]")
        lines.append("\\caption{Subpopulations}")
        lines.append("\\begin{tabular}{lcc}")
        lines.append("\\toprule")
        lines.append("Slice & n & metrics \\\\")
        lines.append("\\midrule")
        for entry in report.subpopulations:
            metrics = ", ".join(f"{k}={_fmt(v)}" for k, v in sorted(entry.get("metrics", {}).items()))
            lines.append(
                f"{_tex_escape(entry['slice'])} & {entry['n']} & {_tex_escape(metrics)} \\\\"
            )
        lines.append("\\bottomrule")
        lines.append("\\end{tabular}")
        lines.append("\\end{table}")
    return "\n".join(lines) + "\n"


def render(report: RobustnessReport, format: str) -> str:
    if format == "json":
        return _to_json(report)
    if format == "markdown":
        return _to_markdown(report)
    if format == "latex":
        return _to_latex(report)
    raise ConfigError(f"unknown report format {format!r}")


def plots_data(report: RobustnessReport) -> str:
    """Per-transform degradation series for external plotting."""
    series = []
    for r in report.rows:
        for metric, value in sorted(r.transformed.items()):
            original = (r.original or {}).get(metric)
            series.append(
                {
                    "transform": r.transform,
                    "group": group_of(r.transform),
                    "metric": metric,
                    "original": original,
                    "transformed": value,
                    "drop": None if original is None else original - value,
                }
            )
    return json.dumps({"degradation": series}, ensure_ascii=False, sort_keys=True, indent=2) + "\n"
