"""seednet: a learned initializer for the mwlith evolutionary mask search.

The package consumes three mwlith file formats — the JSONL mask/pattern
corpus, the binary slit-field table, and mask-string lines — and produces
seed masks that give the search a warm start.  It never imports mwlith;
the file formats are the entire interface.
"""

from .errors import ConfigError, DataError, SeednetError
from .features import network_inputs, spectral_features
from .forward_eval import SlitFieldTable, load_table, mask_pattern, pattern_mse
from .jsonl_data import left_align, load_corpus, read_corpus, split_indices
from .losses import CLAMP_EPSILON, binary_cross_entropy, focal_loss
from .model import ModelSpec, SeedNet, build_model
from .predict import (
    predict_masks,
    predict_probabilities,
    threshold_masks,
    write_mask_lines,
)
from .train import (
    EpochMetrics,
    TrainConfig,
    format_metrics,
    load_checkpoint,
    save_checkpoint,
    train_model,
)

__all__ = [
    "CLAMP_EPSILON",
    "ConfigError",
    "DataError",
    "EpochMetrics",
    "ModelSpec",
    "SeedNet",
    "SeednetError",
    "SlitFieldTable",
    "TrainConfig",
    "binary_cross_entropy",
    "build_model",
    "focal_loss",
    "format_metrics",
    "left_align",
    "load_checkpoint",
    "load_corpus",
    "load_table",
    "mask_pattern",
    "network_inputs",
    "pattern_mse",
    "predict_masks",
    "predict_probabilities",
    "read_corpus",
    "save_checkpoint",
    "spectral_features",
    "split_indices",
    "threshold_masks",
    "train_model",
    "write_mask_lines",
]

__version__ = "0.1.0"
