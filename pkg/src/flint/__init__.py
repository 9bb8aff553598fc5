"""flint: robustness evaluation for NLP models.

Rule-based text transformations with exact label realignment, dataset
slicing, intrinsic validators, an external-model protocol with built-in
baselines and metrics, a greedy adversarial attack, and report generation.
"""
from .config import Config, load_config
from .core import (
    Dataset,
    EditTrace,
    RandomPlan,
    Sample,
    SpanLabel,
    Task,
    TextField,
    Token,
    apply_trace,
    load_dataset,
    remap_labels,
    save_dataset,
    tokenize,
)
from .errors import FlintError, NotApplicable
from .resources import Resources, bundled_resources, load_lexicon
from .transforms import PerturbParams, TransformOutput, create_transform

__version__ = "0.1.0"

__all__ = [
    "Config",
    "Dataset",
    "EditTrace",
    "FlintError",
    "NotApplicable",
    "PerturbParams",
    "RandomPlan",
    "Resources",
    "Sample",
    "SpanLabel",
    "Task",
    "TextField",
    "Token",
    "TransformOutput",
    "apply_trace",
    "bundled_resources",
    "create_transform",
    "load_config",
    "load_dataset",
    "load_lexicon",
    "remap_labels",
    "save_dataset",
    "tokenize",
    "__version__",
]
