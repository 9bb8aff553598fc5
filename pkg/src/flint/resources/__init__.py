from .loaders import (
    AspectOpinion,
    ContractionTable,
    Gazetteer,
    PrefixTable,
    Resources,
    SentimentEntry,
    VerbTable,
    bundled_dir,
    bundled_resources,
    load_lexicon,
)

__all__ = [
    "AspectOpinion",
    "ContractionTable",
    "Gazetteer",
    "PrefixTable",
    "Resources",
    "SentimentEntry",
    "VerbTable",
    "bundled_dir",
    "bundled_resources",
    "load_lexicon",
]
