"""Classification losses used to train the seed-mask predictor.

Both losses operate on per-section probabilities produced by a sigmoid
output layer.  Probabilities are clamped away from 0 and 1 before any
logarithm so that saturated predictions yield large-but-finite penalties
instead of infinities.
"""

from __future__ import annotations

import torch

CLAMP_EPSILON = 1.0e-7


def _log_likelihood(
    targets: torch.Tensor, probabilities: torch.Tensor, eps: float
) -> torch.Tensor:
    """Elementwise binary log-likelihood log P(target | probability).

    This is the (negative-valued) quantity whose mean over elements, with
    the sign flipped, is the usual binary cross entropy.
    """
    if targets.shape != probabilities.shape:
        raise ValueError(
            f"targets shape {tuple(targets.shape)} does not match "
            f"probabilities shape {tuple(probabilities.shape)}"
        )
    clamped = probabilities.clamp(eps, 1.0 - eps)
    return targets * torch.log(clamped) + (1.0 - targets) * torch.log1p(-clamped)


def binary_cross_entropy(
    targets: torch.Tensor,
    probabilities: torch.Tensor,
    eps: float = CLAMP_EPSILON,
) -> torch.Tensor:
    """Mean binary cross entropy over all elements."""
    return -_log_likelihood(targets, probabilities, eps).mean()


def focal_loss(
    targets: torch.Tensor,
    probabilities: torch.Tensor,
    alpha: float | None,
    gamma: float,
    eps: float = CLAMP_EPSILON,
) -> torch.Tensor:
    """Mean focal loss over all elements.

    Each element's log-likelihood ``l`` is reweighted by ``(1 - exp(l))**gamma``,
    which vanishes for confident correct predictions and approaches 1 for
    confident wrong ones, so the loss concentrates on hard elements.  With
    ``alpha`` set, elements whose target is 1 are weighted by ``alpha`` and
    elements whose target is 0 by ``1 - alpha``; with ``alpha=None`` all
    elements carry unit weight.  At ``gamma=0`` and ``alpha=None`` the loss
    reduces exactly to :func:`binary_cross_entropy`.
    """
    if gamma < 0.0:
        raise ValueError(f"gamma must be non-negative, got {gamma}")
    if alpha is not None and not 0.0 < alpha < 1.0:
        raise ValueError(f"alpha must lie strictly between 0 and 1, got {alpha}")
    log_like = _log_likelihood(targets, probabilities, eps)
    modulation = (1.0 - torch.exp(log_like)) ** gamma
    if alpha is None:
        weights = torch.ones_like(log_like)
    else:
        weights = alpha * targets + (1.0 - alpha) * (1.0 - targets)
    return (-weights * modulation * log_like).mean()
