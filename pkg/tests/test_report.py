import json

import pytest

from flint.errors import ConfigError, EmptyReportError
from flint.models.evaluate import EvalResult
from flint.report import analyze, group_of, plots_data, render


def result(transform, orig_acc, trans_acc, n=10):
    return EvalResult(
        transform,
        {"accuracy": orig_acc},
        {"accuracy": trans_acc},
        {"accuracy": orig_acc - trans_acc},
        n,
        n,
    )


def test_single_result_single_row():
    report = analyze([result("Typos", 0.9, 0.7)])
    assert len(report.rows) == 1
    assert report.groups["morphology"][0].transform == "Typos"


def test_worst_k_ordering():
    report = analyze([result("Typos", 0.9, 0.85), result("RevTgt", 0.9, 0.6)], worst_k=1)
    assert [r.transform for r in report.worst] == ["RevTgt"]


def test_empty_input_raises():
    with pytest.raises(EmptyReportError):
        analyze([])


def test_every_result_appears_exactly_once():
    results = [result(t, 0.9, 0.5) for t in ("Typos", "SwapSyn", "RevTgt", "Overlap", "AddSum")]
    report = analyze(results)
    assert sorted(r.transform for r in report.rows) == sorted(r.transform for r in results)
    assert sum(len(rows) for rows in report.groups.values()) == len(results)


def test_grouping_table():
    assert group_of("Typos") == "morphology"
    assert group_of("WordCase:upper") == "morphology"
    assert group_of("SwapSyn") == "paradigmatic-relation"
    assert group_of("RevTgt") == "syntax"
    assert group_of("TwitterType") == "pragmatics"
    assert group_of("Overlap") == "model-related"
    assert group_of("NumWord") == "task-specific"
    assert group_of("Typos+WordCase:upper") == "morphology"


def test_rows_sorted_by_degradation_within_group():
    report = analyze([result("Typos", 0.9, 0.8), result("Keyboard", 0.9, 0.4)])
    names = [r.transform for r in report.groups["morphology"]]
    assert names == ["Keyboard", "Typos"]


def test_json_roundtrip_deterministic():
    report = analyze([result("Typos", 0.9, 0.7)], model_id="m", dataset_id="d")
    first = render(report, "json")
    again = render(analyze([result("Typos", 0.9, 0.7)], model_id="m", dataset_id="d"), "json")
    assert first == again
    payload = json.loads(first)
    assert payload["model"] == "m"
    assert payload["groups"]["morphology"][0]["transform"] == "Typos"


def test_markdown_paired_columns():
    text = render(analyze([result("Typos", 0.9, 0.7)]), "markdown")
    assert "accuracy (Ori. -> Trans.)" in text
    assert "90.00 -> 70.00" in text


def test_markdown_deterministic():
    make = lambda: render(analyze([result("Typos", 0.9, 0.7), result("RevTgt", 0.8, 0.2)]), "markdown")
    assert make() == make()


def lint_latex(text: str) -> None:
    assert text.count("\\begin{table}") == text.count("\\end{table}")
    assert text.count("\\begin{tabular}") == text.count("\\end{tabular}")
    assert text.count("{") == text.count("}")
    in_tabular = False
    ncols = 0
    for line in text.splitlines():
        if "\\begin{tabular}" in line:
            in_tabular = True
            spec = line.split("{")[-1].rstrip("}")
            ncols = len(spec)
            continue
        if "\\end{tabular}" in line:
            in_tabular = False
            continue
        if in_tabular and line.endswith("\\\\"):
            assert line.count("&") == ncols - 1, line


def test_latex_structure():
    report = analyze(
        [result("Typos", 0.9, 0.7), result("RevTgt", 0.8, 0.2)],
        slices=[{"slice": "length:top:0.2", "n": 5, "metrics": {"accuracy": 0.8}}],
    )
    lint_latex(render(report, "latex"))


def test_unknown_format():
    with pytest.raises(ConfigError):
        render(analyze([result("Typos", 0.9, 0.7)]), "pdf")


def test_subpopulation_rows_no_pairing():
    report = analyze([], slices=[{"slice": "prejudice:man", "n": 3, "metrics": {"accuracy": 1.0}}])
    assert report.subpopulations[0]["slice"] == "prejudice:man"
    text = render(report, "markdown")
    assert "prejudice:man" in text


def test_attack_summary():
    records = [
        {"success": True, "queries": 5, "words_changed": 1},
        {"success": False, "queries": 9, "words_changed": 0},
    ]
    report = analyze([], attack_records=records)
    assert report.attack["success_rate"] == 0.5
    assert report.attack["mean_queries"] == 7.0


def test_unpaired_result_renders():
    unpaired = EvalResult("Overlap", None, {"accuracy": 0.6}, None, 0, 20)
    text = render(analyze([unpaired]), "markdown")
    assert "- -> 60.00" in text


def test_validator_stats_aggregated():
    report = analyze(
        [result("Typos", 0.9, 0.7)],
        validator_scores={"Typos": [{"bleu": 0.8}, {"bleu": 0.6}]},
    )
    assert report.validator_stats["Typos"]["bleu"] == pytest.approx(0.7)


def test_annotations_carried():
    report = analyze(
        [result("Typos", 0.9, 0.7)],
        annotations={"Typos": {"plausibility": 4.1, "grammaticality": 3.2}},
    )
    text = render(report, "markdown")
    assert "plausibility=4.10" in text


def test_plots_data_series():
    report = analyze([result("Typos", 0.9, 0.7)])
    payload = json.loads(plots_data(report))
    series = payload["degradation"]
    assert series[0]["transform"] == "Typos"
    assert series[0]["drop"] == pytest.approx(0.2)
