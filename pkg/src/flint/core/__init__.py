from .dataset import Dataset, load_dataset, record_to_sample, sample_to_record, save_dataset
from .edits import (
    DeleteSpan,
    EditTrace,
    InsertAt,
    PRESERVING,
    ReplaceSpan,
    apply_edits,
    apply_token_edits,
    relabeled,
)
from .labels import SpanLabel, bio_decode, bio_encode, is_bio
from .sample import NLI_LABELS, POLARITIES, Sample, Task, apply_trace, remap_labels
from .seeds import RandomPlan, fnv1a_64
from .tokens import TextField, Token, detokenize, tokenize

__all__ = [
    "Dataset",
    "DeleteSpan",
    "EditTrace",
    "InsertAt",
    "NLI_LABELS",
    "POLARITIES",
    "PRESERVING",
    "RandomPlan",
    "ReplaceSpan",
    "Sample",
    "SpanLabel",
    "Task",
    "TextField",
    "Token",
    "apply_edits",
    "apply_token_edits",
    "apply_trace",
    "bio_decode",
    "bio_encode",
    "detokenize",
    "fnv1a_64",
    "is_bio",
    "load_dataset",
    "record_to_sample",
    "relabeled",
    "remap_labels",
    "sample_to_record",
    "save_dataset",
    "tokenize",
]
