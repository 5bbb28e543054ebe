"""Agreement measures between a target pattern and a candidate pattern.

Both measures require the two patterns to live on the same grid with the
same normalization; comparing across grids or normalizations is a
configuration error, not a number.
"""

from __future__ import annotations

import numpy as np

from .errors import ConfigurationError
from .fields import IntensityPattern

#: Regularizer keeping the fitness finite at an exact match.
FITNESS_ALPHA = 1.0e-9


def _check_comparable(target: IntensityPattern, candidate: IntensityPattern):
    if not target.grid.same_as(candidate.grid):
        raise ConfigurationError("patterns are sampled on different grids")
    if target.normalization != candidate.normalization:
        raise ConfigurationError(
            "patterns carry different normalizations "
            f"({target.normalization!r} vs {candidate.normalization!r})"
        )


def abs_deviation(target_values: np.ndarray, candidate_values: np.ndarray) -> float:
    """Summed absolute deviation over the grid (no spacing weight)."""
    return float(np.sum(np.abs(target_values - candidate_values)))


def fitness_from_deviation(deviation: float, alpha: float = FITNESS_ALPHA) -> float:
    return 1.0 / (alpha + deviation)


def fitness(
    target: IntensityPattern,
    candidate: IntensityPattern,
    alpha: float = FITNESS_ALPHA,
) -> float:
    """Inverse regularized summed absolute deviation.

    Maximal (1/alpha) exactly when the patterns agree point for point;
    strictly decreasing in any pointwise deviation, so ranking candidates by
    fitness is the same as ranking them by summed absolute error.
    """
    if alpha <= 0.0:
        raise ConfigurationError(f"alpha must be positive, got {alpha!r}")
    _check_comparable(target, candidate)
    return fitness_from_deviation(abs_deviation(target.values, candidate.values), alpha)


def error_mse(target: IntensityPattern, candidate: IntensityPattern) -> float:
    """Grid-spacing-weighted sum of squared deviations.

    A Riemann approximation of the integrated squared error, so the number
    is stable under grid refinement of the same physical window.
    """
    _check_comparable(target, candidate)
    diff = target.values - candidate.values
    return float(np.sum(diff * diff) * target.grid.spacing)
