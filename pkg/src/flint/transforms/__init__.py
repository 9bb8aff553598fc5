"""Transformation registry: string-addressable names for config and CLI."""
from __future__ import annotations

from ..core.sample import Task
from ..errors import ConfigError
from ..resources import Resources
from .absa import AddDiff, RevNon, RevTgt
from .base import (
    DatasetTransformation,
    GeneratorTransformation,
    PerturbParams,
    Transformation,
    TransformOutput,
)
from .ner import ConcatSent, CrossCategory, EntTypos, OOVEntity, SwapLonger
from .nli import AddSent, NumWord, Overlap, SwapAntNLI
from .pos import SwapMultiPOS, SwapPrefix
from .sa import AddSum, DoubleDenial, SwapSpecialEnt
from .universal import (
    AppendIrr,
    CharPerturb,
    Contraction,
    EditPunc,
    InsertAdv,
    PluginTransform,
    Prejudice,
    ReverseNeg,
    SwapLexical,
    SwapNamedEnt,
    SwapNum,
    Tense,
    TwitterType,
    WordCase,
)

_FACTORIES = {
    "Keyboard": lambda res, arg, params, opts: CharPerturb(res, params, "Keyboard"),
    "Ocr": lambda res, arg, params, opts: CharPerturb(res, params, "Ocr"),
    "Typos": lambda res, arg, params, opts: CharPerturb(res, params, "Typos"),
    "SpellingError": lambda res, arg, params, opts: CharPerturb(res, params, "SpellingError"),
    "WordCase": lambda res, arg, params, opts: WordCase(res, params, arg or "upper"),
    "Contraction": lambda res, arg, params, opts: Contraction(res, params, arg or "contract"),
    "SwapSyn": lambda res, arg, params, opts: SwapLexical(res, params, "synonym"),
    "SwapAnt": lambda res, arg, params, opts: SwapLexical(res, params, "antonym"),
    "SwapNum": lambda res, arg, params, opts: SwapNum(res, params),
    "InsertAdv": lambda res, arg, params, opts: InsertAdv(res, params),
    "AppendIrr": lambda res, arg, params, opts: AppendIrr(res, params, arg or "suffix"),
    "TwitterType": lambda res, arg, params, opts: TwitterType(res, params),
    "AddPunc": lambda res, arg, params, opts: EditPunc(res, params, "add"),
    "RmvPunc": lambda res, arg, params, opts: EditPunc(res, params, "remove"),
    "Tense": lambda res, arg, params, opts: Tense(res, params),
    "SwapNamedEnt": lambda res, arg, params, opts: SwapNamedEnt(res, params),
    "Prejudice": lambda res, arg, params, opts: Prejudice(res, params, arg or "man"),
    "AddNeg": lambda res, arg, params, opts: ReverseNeg(res, params, "add"),
    "RmvNeg": lambda res, arg, params, opts: ReverseNeg(res, params, "remove"),
    "EntTypos": lambda res, arg, params, opts: EntTypos(res, params),
    "SwapLonger": lambda res, arg, params, opts: SwapLonger(res, params),
    "OOV": lambda res, arg, params, opts: OOVEntity(res, params),
    "CrossCategory": lambda res, arg, params, opts: CrossCategory(res, params),
    "ConcatSent": lambda res, arg, params, opts: ConcatSent(
        res, params, int(arg or opts.get("k", 2))
    ),
    "SwapPrefix": lambda res, arg, params, opts: SwapPrefix(res, params),
    "SwapMultiPOS": lambda res, arg, params, opts: SwapMultiPOS(res, params),
    "DoubleDenial": lambda res, arg, params, opts: DoubleDenial(res, params),
    "AddSum": lambda res, arg, params, opts: AddSum(res, params, arg or "person"),
    "SwapSpecialEnt": lambda res, arg, params, opts: SwapSpecialEnt(res, params, arg or "movie"),
    "RevTgt": lambda res, arg, params, opts: RevTgt(res, params),
    "RevNon": lambda res, arg, params, opts: RevNon(res, params),
    "AddDiff": lambda res, arg, params, opts: AddDiff(res, params),
    "SwapAnt-NLI": lambda res, arg, params, opts: SwapAntNLI(res, params),
    "Overlap": lambda res, arg, params, opts: Overlap(res, params),
    "AddSent": lambda res, arg, params, opts: AddSent(res, params),
    "NumWord": lambda res, arg, params, opts: NumWord(res, params),
    "BackTrans": lambda res, arg, params, opts: PluginTransform(
        res, params, "BackTrans", opts.get("adapter")
    ),
    "MLMSuggestion": lambda res, arg, params, opts: PluginTransform(
        res, params, "MLMSuggestion", opts.get("adapter")
    ),
}

TRANSFORM_NAMES = tuple(sorted(_FACTORIES))

# Transforms whose traces declare a relabel; at most one may appear in a
# combination, and a name may not repeat within one combination.
RELABELING = frozenset({"CrossCategory", "RevTgt", "SwapAnt-NLI", "NumWord", "Overlap"})

# Canonical single-transform specs the all-defaults config enumerates.
# Plug-in slots are excluded: they need a configured adapter.
DEFAULT_SPECS = (
    "Typos",
    "Keyboard",
    "Ocr",
    "SpellingError",
    "WordCase:upper",
    "Contraction:contract",
    "SwapSyn",
    "SwapAnt",
    "SwapNum",
    "InsertAdv",
    "AppendIrr",
    "TwitterType",
    "AddPunc",
    "RmvPunc",
    "Tense",
    "SwapNamedEnt",
    "Prejudice:man",
    "AddNeg",
    "RmvNeg",
    "EntTypos",
    "SwapLonger",
    "OOV",
    "CrossCategory",
    "ConcatSent",
    "SwapPrefix",
    "SwapMultiPOS",
    "DoubleDenial",
    "AddSum:person",
    "SwapSpecialEnt:movie",
    "RevTgt",
    "RevNon",
    "AddDiff",
    "SwapAnt-NLI",
    "Overlap",
    "AddSent",
    "NumWord",
)


def split_spec(spec: str) -> tuple[str, str | None]:
    base, _, arg = spec.partition(":")
    return base, (arg or None)


def create_transform(
    spec: str,
    resources: Resources,
    params: PerturbParams | None = None,
    options: dict | None = None,
) -> Transformation:
    base, arg = split_spec(spec)
    factory = _FACTORIES.get(base)
    if factory is None:
        raise ConfigError(f"unknown transformation {spec!r}")
    return factory(resources, arg, params, options or {})


def supported_specs(task: Task, resources: Resources) -> list[str]:
    specs = []
    for spec in DEFAULT_SPECS:
        transform = create_transform(spec, resources)
        if task in transform.tasks:
            specs.append(spec)
    return specs


def check_combination(specs: list[str], task: Task, resources: Resources) -> None:
    """Static pairwise compatibility of a transform combination."""
    if len(specs) < 2:
        raise ConfigError(f"combination {specs} needs at least two members")
    bases = [split_spec(s)[0] for s in specs]
    if len(set(bases)) != len(bases):
        raise ConfigError(f"combination {specs} repeats a transformation")
    relabelers = [b for b in bases if b in RELABELING]
    if len(relabelers) > 1:
        raise ConfigError(
            f"combination {specs} chains label-editing transforms {relabelers}"
        )
    for spec in specs:
        transform = create_transform(spec, resources)
        if task not in transform.tasks:
            raise ConfigError(f"{spec} does not support task {task.value}")
        if isinstance(transform, (DatasetTransformation, GeneratorTransformation)):
            raise ConfigError(f"{spec} cannot be chained in a combination")


__all__ = [
    "DEFAULT_SPECS",
    "DatasetTransformation",
    "GeneratorTransformation",
    "PerturbParams",
    "RELABELING",
    "TRANSFORM_NAMES",
    "TransformOutput",
    "Transformation",
    "check_combination",
    "create_transform",
    "split_spec",
    "supported_specs",
]
