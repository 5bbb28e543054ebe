"""Input features derived from detector intensity patterns.

The network sees three views of each pattern: the pattern itself and the
modulus and phase angle of its real-input discrete Fourier transform.
The spectral views expose the opening widths and pair separations that
generate a pattern far more directly than the raw intensities do.

Scaling uses fixed constants only (no statistics of the data), so a model
trained on one corpus can be applied to any pattern on the same grid.
"""

from __future__ import annotations

import numpy as np
import torch


def spectral_features(patterns: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Modulus and angle of the one-sided DFT of each pattern.

    ``patterns`` has shape ``(n_records, n_detector)``; both outputs have
    shape ``(n_records, n_detector // 2 + 1)`` and dtype float64.
    """
    spectrum = np.fft.rfft(patterns, axis=-1)
    return np.abs(spectrum), np.angle(spectrum)


def network_inputs(
    patterns: np.ndarray,
) -> tuple[torch.Tensor, torch.Tensor, torch.Tensor]:
    """Convert patterns to the three single-channel tensors the model takes.

    Returns ``(pattern, modulus, angle)`` float32 tensors, each of shape
    ``(n_records, 1, length)``.  Patterns are already in [0, 1]; the
    spectrum modulus is divided by the detector count (its maximum
    possible value for a peak-one pattern) and the angle by pi, placing
    all channels on an O(1) scale.
    """
    patterns = np.atleast_2d(np.asarray(patterns, dtype=np.float64))
    n_detector = patterns.shape[-1]
    modulus, angle = spectral_features(patterns)
    pattern_t = torch.from_numpy(patterns).to(torch.float32).unsqueeze(1)
    modulus_t = torch.from_numpy(modulus / n_detector).to(torch.float32).unsqueeze(1)
    angle_t = torch.from_numpy(angle / np.pi).to(torch.float32).unsqueeze(1)
    return pattern_t, modulus_t, angle_t
