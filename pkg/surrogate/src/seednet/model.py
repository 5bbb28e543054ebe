"""Three-tower convolutional network mapping patterns to section probabilities.

One tower reads the raw intensity pattern and one each reads the modulus
and phase angle of its Fourier transform.  Every tower is a stack of
residual convolution blocks (the block input is added back to its output)
followed by average pooling; the flattened tower outputs are concatenated
and passed through a fully connected head ending in per-section sigmoids.
No normalisation layers are used anywhere.
"""

from __future__ import annotations

from dataclasses import dataclass, asdict

import torch
from torch import nn

from .errors import ConfigError


@dataclass(frozen=True)
class ModelSpec:
    """Architecture parameters.

    ``n_sections`` and ``n_detector`` are fixed by the data; the rest are
    free capacity knobs with defaults sized for patterns of a few hundred
    samples.
    """

    n_sections: int
    n_detector: int
    channels: int = 16
    kernel_size: int = 9
    pattern_blocks: int = 2
    spectrum_blocks: int = 1
    pattern_pool: int = 8
    spectrum_pool: int = 4
    hidden: int = 256

    def __post_init__(self) -> None:
        for name in (
            "n_sections",
            "n_detector",
            "channels",
            "kernel_size",
            "pattern_blocks",
            "spectrum_blocks",
            "pattern_pool",
            "spectrum_pool",
            "hidden",
        ):
            value = getattr(self, name)
            if not isinstance(value, int) or value <= 0:
                raise ConfigError(f"{name} must be a positive integer, got {value!r}")
        if self.kernel_size % 2 == 0:
            raise ConfigError(f"kernel_size must be odd, got {self.kernel_size}")
        if self.n_detector // self.pattern_pool == 0:
            raise ConfigError("pattern_pool is larger than the pattern itself")
        if self.n_spectrum // self.spectrum_pool == 0:
            raise ConfigError("spectrum_pool is larger than the spectrum itself")

    @property
    def n_spectrum(self) -> int:
        """Length of the one-sided DFT of an ``n_detector``-sample pattern."""
        return self.n_detector // 2 + 1


class ResidualBlock(nn.Module):
    """Two same-padding convolutions whose input is added back to the output."""

    def __init__(self, channels: int, kernel_size: int) -> None:
        super().__init__()
        padding = kernel_size // 2
        self.first = nn.Conv1d(channels, channels, kernel_size, padding=padding)
        self.second = nn.Conv1d(channels, channels, kernel_size, padding=padding)

    def forward(self, x: torch.Tensor) -> torch.Tensor:
        return x + self.second(torch.relu(self.first(x)))


class Tower(nn.Module):
    """Entry convolution, residual blocks, pooling, and flattening."""

    def __init__(
        self, length: int, channels: int, kernel_size: int, blocks: int, pool: int
    ) -> None:
        super().__init__()
        padding = kernel_size // 2
        self.entry = nn.Conv1d(1, channels, kernel_size, padding=padding)
        self.blocks = nn.ModuleList(
            ResidualBlock(channels, kernel_size) for _ in range(blocks)
        )
        self.pool = nn.AvgPool1d(pool)
        self.out_features = channels * (length // pool)

    def forward(self, x: torch.Tensor) -> torch.Tensor:
        x = torch.relu(self.entry(x))
        for block in self.blocks:
            x = torch.relu(block(x))
        return self.pool(x).flatten(start_dim=1)


class SeedNet(nn.Module):
    """The full three-tower predictor."""

    def __init__(self, spec: ModelSpec) -> None:
        super().__init__()
        self.spec = spec
        self.pattern_tower = Tower(
            spec.n_detector,
            spec.channels,
            spec.kernel_size,
            spec.pattern_blocks,
            spec.pattern_pool,
        )
        self.modulus_tower = Tower(
            spec.n_spectrum,
            spec.channels,
            spec.kernel_size,
            spec.spectrum_blocks,
            spec.spectrum_pool,
        )
        self.angle_tower = Tower(
            spec.n_spectrum,
            spec.channels,
            spec.kernel_size,
            spec.spectrum_blocks,
            spec.spectrum_pool,
        )
        combined = (
            self.pattern_tower.out_features
            + self.modulus_tower.out_features
            + self.angle_tower.out_features
        )
        self.head = nn.Sequential(
            nn.Linear(combined, spec.hidden),
            nn.ReLU(),
            nn.Linear(spec.hidden, spec.n_sections),
        )

    def forward(
        self, pattern: torch.Tensor, modulus: torch.Tensor, angle: torch.Tensor
    ) -> torch.Tensor:
        """Map ``(n, 1, length)`` inputs to ``(n, n_sections)`` probabilities."""
        combined = torch.cat(
            (
                self.pattern_tower(pattern),
                self.modulus_tower(modulus),
                self.angle_tower(angle),
            ),
            dim=1,
        )
        return torch.sigmoid(self.head(combined))


def build_model(spec: ModelSpec, seed: int) -> SeedNet:
    """Construct a model with weights drawn deterministically from ``seed``."""
    torch.manual_seed(seed)
    return SeedNet(spec)


def spec_to_dict(spec: ModelSpec) -> dict:
    return asdict(spec)


def spec_from_dict(data: dict) -> ModelSpec:
    try:
        return ModelSpec(**data)
    except TypeError as exc:
        raise ConfigError(f"invalid model description: {exc}") from exc
