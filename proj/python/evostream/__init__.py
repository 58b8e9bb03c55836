"""Online text-stream clustering and multi-label classification."""

import json

from ._core import (
    ConfigError,
    InvariantError,
    IoError,
    clustering_metrics,
    cooc_ratio,
    model_names,
    multilabel_metrics,
    porter_stem,
    tokenize,
    triangular,
    word_specificity,
)
from . import _core

__all__ = [
    "ConfigError",
    "InvariantError",
    "IoError",
    "clustering_metrics",
    "cooc_ratio",
    "generate",
    "model_names",
    "multilabel_metrics",
    "porter_stem",
    "run",
    "tokenize",
    "triangular",
    "word_specificity",
]


def generate(spec):
    """Synthetic stream as a list of record dicts. `spec` is key/value config text."""
    return [json.loads(line) for line in _core.generate_jsonl(spec).splitlines()]


def run(model, records, params=None, window=1000, seed=0):
    """Run a model over record dicts; returns (report, rows, events)."""
    out = _core.run_model(model, list(records), params or {}, window, seed)
    return (
        json.loads(out.report),
        [json.loads(r) for r in out.rows],
        [json.loads(e) for e in out.events],
    )
