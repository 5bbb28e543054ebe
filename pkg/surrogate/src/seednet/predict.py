"""Turn detector patterns into seed-mask files for the evolutionary search.

Predicted per-section probabilities are thresholded at 0.5 into 0/1
states and written one mask string per line — the format the search's
``--seed-masks`` option reads.
"""

from __future__ import annotations

from typing import IO

import numpy as np
import torch

from .errors import ConfigError
from .features import network_inputs
from .model import SeedNet

THRESHOLD = 0.5


def predict_probabilities(model: SeedNet, patterns: np.ndarray) -> np.ndarray:
    """Per-section probabilities for each pattern, shape (n, n_sections)."""
    patterns = np.atleast_2d(np.asarray(patterns, dtype=np.float64))
    if patterns.shape[1] != model.spec.n_detector:
        raise ConfigError(
            f"patterns have {patterns.shape[1]} detector points, model expects "
            f"{model.spec.n_detector}"
        )
    model.eval()
    with torch.no_grad():
        pattern, modulus, angle = network_inputs(patterns)
        return model(pattern, modulus, angle).numpy().astype(np.float64)


def threshold_masks(probabilities: np.ndarray) -> np.ndarray:
    """Convert probabilities to 0/1 section states (open at or above 0.5)."""
    return (np.asarray(probabilities) >= THRESHOLD).astype(np.uint8)


def predict_masks(model: SeedNet, patterns: np.ndarray) -> np.ndarray:
    """Thresholded mask rows for each pattern, shape (n, n_sections)."""
    return threshold_masks(predict_probabilities(model, patterns))


def write_mask_lines(handle: IO[str], mask_rows: np.ndarray) -> None:
    """Write masks one 0/1 string per line."""
    for row in np.atleast_2d(np.asarray(mask_rows)):
        handle.write("".join("1" if state else "0" for state in row))
        handle.write("\n")
