"""Training loop with seeded batching and early stopping.

Training is a pure function of the corpus and the configuration: the model
init, the train/validation/test split, and every epoch's batch order all
derive from ``TrainConfig.seed``, so repeated runs produce identical
checkpoints on the same hardware.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass
from typing import IO, Sequence

import numpy as np
import torch

from .errors import ConfigError, DataError
from .features import network_inputs
from .forward_eval import SlitFieldTable, pattern_mse
from .jsonl_data import left_align, split_indices
from .losses import focal_loss
from .model import ModelSpec, SeedNet, build_model, spec_from_dict, spec_to_dict

OPTIMIZERS = ("adam", "rmsprop")


@dataclass(frozen=True)
class TrainConfig:
    """Optimisation parameters; defaults follow the tuned reference run."""

    optimizer: str = "adam"
    learning_rate: float = 0.00016
    batch_size: int = 225
    focal_alpha: float = 0.439
    focal_gamma: float = 5.952
    patience: int = 10
    min_delta: float = 0.001
    max_epochs: int = 150
    seed: int = 0
    augment_reversal: bool = True

    def __post_init__(self) -> None:
        if self.optimizer not in OPTIMIZERS:
            raise ConfigError(
                f"optimizer must be one of {OPTIMIZERS}, got {self.optimizer!r}"
            )
        if not self.learning_rate > 0.0:
            raise ConfigError(f"learning_rate must be positive, got {self.learning_rate}")
        if self.batch_size <= 0:
            raise ConfigError(f"batch_size must be positive, got {self.batch_size}")
        if not 0.0 < self.focal_alpha < 1.0:
            raise ConfigError(
                f"focal_alpha must lie strictly between 0 and 1, got {self.focal_alpha}"
            )
        if self.focal_gamma < 0.0:
            raise ConfigError(f"focal_gamma must be non-negative, got {self.focal_gamma}")
        if self.patience <= 0:
            raise ConfigError(f"patience must be positive, got {self.patience}")
        if self.min_delta < 0.0:
            raise ConfigError(f"min_delta must be non-negative, got {self.min_delta}")
        if self.max_epochs <= 0:
            raise ConfigError(f"max_epochs must be positive, got {self.max_epochs}")


@dataclass(frozen=True)
class EpochMetrics:
    """One row of the training log; ``val_pattern_mse`` is nan without a table."""

    epoch: int
    train_loss: float
    val_loss: float
    val_pattern_mse: float


def _make_optimizer(model: SeedNet, config: TrainConfig) -> torch.optim.Optimizer:
    if config.optimizer == "adam":
        return torch.optim.Adam(model.parameters(), lr=config.learning_rate)
    return torch.optim.RMSprop(model.parameters(), lr=config.learning_rate)


def _batch_loss(
    model: SeedNet,
    inputs: tuple[torch.Tensor, torch.Tensor, torch.Tensor],
    targets: torch.Tensor,
    index: torch.Tensor,
    config: TrainConfig,
) -> torch.Tensor:
    pattern, modulus, angle = (tensor[index] for tensor in inputs)
    probabilities = model(pattern, modulus, angle)
    return focal_loss(
        targets[index], probabilities, config.focal_alpha, config.focal_gamma
    )


def _validation_metrics(
    model: SeedNet,
    inputs: tuple[torch.Tensor, torch.Tensor, torch.Tensor],
    targets: torch.Tensor,
    val_index: torch.Tensor,
    patterns: np.ndarray,
    val_rows: np.ndarray,
    config: TrainConfig,
    table: SlitFieldTable | None,
) -> tuple[float, float]:
    model.eval()
    with torch.no_grad():
        loss = _batch_loss(model, inputs, targets, val_index, config).item()
        if table is None:
            mse = math.nan
        else:
            pattern, modulus, angle = (tensor[val_index] for tensor in inputs)
            probabilities = model(pattern, modulus, angle).numpy()
            mask_rows = (probabilities >= 0.5).astype(np.uint8)
            mse = pattern_mse(mask_rows, patterns[val_rows], table)
    model.train()
    return loss, mse


def train_model(
    masks: np.ndarray,
    patterns: np.ndarray,
    config: TrainConfig,
    spec: ModelSpec | None = None,
    table: SlitFieldTable | None = None,
    log: IO[str] | None = None,
) -> tuple[SeedNet, list[EpochMetrics]]:
    """Fit a model to a corpus and return it with its per-epoch metrics.

    The returned model carries the weights of the best validation epoch,
    not the last one.  With ``table`` given, the corpus grid must match it
    and each epoch additionally reports the pattern error of the
    thresholded predictions on the validation records.
    """
    masks = np.asarray(masks, dtype=np.uint8)
    patterns = np.asarray(patterns, dtype=np.float64)
    if masks.ndim != 2 or patterns.ndim != 2 or masks.shape[0] != patterns.shape[0]:
        raise ConfigError(
            f"need matching 2-D arrays, got masks {masks.shape} and "
            f"patterns {patterns.shape}"
        )
    if table is not None and patterns.shape[1] != table.n_detector:
        raise DataError(
            f"corpus patterns have {patterns.shape[1]} points, table expects "
            f"{table.n_detector}"
        )
    if table is not None and masks.shape[1] != table.n_sections:
        raise DataError(
            f"corpus masks have {masks.shape[1]} sections, table expects "
            f"{table.n_sections}"
        )
    if spec is None:
        spec = ModelSpec(n_sections=masks.shape[1], n_detector=patterns.shape[1])
    elif spec.n_sections != masks.shape[1] or spec.n_detector != patterns.shape[1]:
        raise ConfigError(
            f"model expects {spec.n_sections} sections on {spec.n_detector} "
            f"detector points, corpus has {masks.shape[1]} on {patterns.shape[1]}"
        )

    train_rows, val_rows, _ = split_indices(masks.shape[0], config.seed)
    if config.augment_reversal:
        # Reversing a mask reverses its detector pattern exactly (the field
        # at -r is the reversed mask's field at r), so every training record
        # has a mirror twin.  Appending the twins doubles the training rows;
        # validation and test rows stay untouched.
        originals = masks.shape[0]
        masks = np.concatenate([masks, masks[train_rows, ::-1]])
        patterns = np.concatenate([patterns, patterns[train_rows, ::-1]])
        train_rows = np.concatenate(
            [train_rows, np.arange(originals, masks.shape[0])]
        )
    inputs = network_inputs(patterns)
    # Patterns are invariant under rigid mask translation, so the corpus
    # labels each pattern with an arbitrary translate; aligning labels to
    # the leftmost representative removes that ambiguity.
    targets = torch.from_numpy(left_align(masks)).to(torch.float32)
    train_index = torch.from_numpy(train_rows.copy())
    val_index = torch.from_numpy(val_rows.copy())

    model = build_model(spec, config.seed)
    model.train()
    optimizer = _make_optimizer(model, config)
    shuffler = np.random.default_rng(config.seed)

    metrics: list[EpochMetrics] = []
    best_val = math.inf
    best_state: dict[str, torch.Tensor] | None = None
    wait = 0
    for epoch in range(config.max_epochs):
        order = shuffler.permutation(train_rows.size)
        total = 0.0
        for begin in range(0, train_rows.size, config.batch_size):
            batch = train_index[order[begin : begin + config.batch_size]]
            optimizer.zero_grad()
            loss = _batch_loss(model, inputs, targets, batch, config)
            loss.backward()
            optimizer.step()
            total += loss.item() * batch.numel()
        train_loss = total / train_rows.size
        val_loss, val_mse = _validation_metrics(
            model, inputs, targets, val_index, patterns, val_rows, config, table
        )
        metrics.append(EpochMetrics(epoch, train_loss, val_loss, val_mse))
        if log is not None:
            log.write(
                f"epoch {epoch}: train {train_loss:.6g} val {val_loss:.6g} "
                f"pattern_mse {val_mse:.6g}\n"
            )
            log.flush()
        if val_loss < best_val - config.min_delta:
            wait = 0
        else:
            wait += 1
        if val_loss < best_val:
            best_val = val_loss
            best_state = {
                name: value.detach().clone()
                for name, value in model.state_dict().items()
            }
        if wait >= config.patience:
            break
    if best_state is not None:
        model.load_state_dict(best_state)
    model.eval()
    return model, metrics


def format_metrics(metrics: Sequence[EpochMetrics]) -> str:
    lines = ["# columns: epoch train_loss val_loss val_pattern_mse"]
    for row in metrics:
        lines.append(
            f"{row.epoch} {row.train_loss:.17g} {row.val_loss:.17g} "
            f"{row.val_pattern_mse:.17g}"
        )
    return "\n".join(lines) + "\n"


def save_checkpoint(path: str, model: SeedNet, config: TrainConfig) -> None:
    torch.save(
        {
            "format": "seednet-checkpoint",
            "version": 1,
            "model_spec": spec_to_dict(model.spec),
            "train_config": asdict(config),
            "state_dict": model.state_dict(),
        },
        path,
    )


def load_checkpoint(path: str) -> tuple[SeedNet, TrainConfig]:
    """Rebuild a saved model in inference mode."""
    try:
        payload = torch.load(path, map_location="cpu", weights_only=True)
    except Exception as exc:
        raise DataError(f"cannot read checkpoint: {exc}") from exc
    if not isinstance(payload, dict) or payload.get("format") != "seednet-checkpoint":
        raise DataError("file is not a seednet checkpoint")
    if payload.get("version") != 1:
        raise DataError(f"unsupported checkpoint version {payload.get('version')!r}")
    spec = spec_from_dict(payload["model_spec"])
    try:
        config = TrainConfig(**payload["train_config"])
    except TypeError as exc:
        raise DataError(f"invalid training configuration: {exc}") from exc
    model = SeedNet(spec)
    model.load_state_dict(payload["state_dict"])
    model.eval()
    return model, config
