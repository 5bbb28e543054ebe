"""Reader and evaluator for precomputed slit-field table files ("MWST").

This is an independent consumer of the mwlith table format documented in
that package's docs/formats.md: a little-endian header (magic, version,
mode, row/grid/section counts, nine geometry floats, detector half-extent,
SHA-256 fingerprint) followed by one complex128 field row per admissible
opening width.  Reconstructing a mask's detector pattern needs nothing
beyond this file: select the row of each contiguous open run, apply the
run-center phase factor, sum, square, and normalise the peak to one.

Every arithmetic step follows the file format's documented evaluation
recipe exactly, operand order included, so patterns computed here match
the producer's output bit for bit.  That exactness is what lets training
metrics be compared directly against files the producer wrote.
"""

from __future__ import annotations

import hashlib
import struct
from dataclasses import dataclass

import numpy as np

from .errors import ConfigError, DataError

MAGIC = b"MWST"
VERSION = 1
MODE_NAMES = {0: "matter", 1: "em"}

_HEADER = struct.Struct("<4s5I10d32s")
_FINGERPRINT_PAYLOAD = struct.Struct("<9ddIII")

GEOMETRY_FIELDS = (
    "wavelength",
    "source_distance",
    "screen_distance",
    "membrane_thickness",
    "c3_coefficient",
    "particle_mass",
    "width_reduction",
    "section_width",
    "amplitude",
)


@dataclass(frozen=True)
class SlitFieldTable:
    """Contents of one table file, validated against its own fingerprint."""

    mode: str
    n_sections: int
    n_detector: int
    r_max: float
    geometry: dict[str, float]
    rows: np.ndarray
    fingerprint: bytes

    @property
    def positions(self) -> np.ndarray:
        """Detector coordinates: n_detector points spanning [-r_max, r_max]."""
        step = 2.0 * self.r_max / (self.n_detector - 1)
        offsets = (
            np.arange(self.n_detector, dtype=np.float64) - (self.n_detector - 1) / 2.0
        )
        return offsets * step

    @property
    def phase_scale(self) -> float:
        """Spatial frequency per unit detector coordinate, k0 / L2."""
        wavenumber = 2.0 * np.pi / self.geometry["wavelength"]
        return wavenumber / self.geometry["screen_distance"]


def load_table(path: str) -> SlitFieldTable:
    """Read and validate a table file."""
    with open(path, "rb") as handle:
        raw = handle.read()
    if len(raw) < _HEADER.size:
        raise DataError(
            f"table file holds {len(raw)} bytes, the header alone needs "
            f"{_HEADER.size}"
        )
    (
        magic,
        version,
        mode_code,
        n_widths,
        n_detector,
        n_sections,
        *floats,
        fingerprint,
    ) = _HEADER.unpack_from(raw)
    if magic != MAGIC:
        raise DataError(f"bad magic {magic!r}, expected {MAGIC!r}")
    if version != VERSION:
        raise DataError(f"unsupported table version {version}")
    if mode_code not in MODE_NAMES:
        raise DataError(f"unknown mode code {mode_code}")
    geometry = dict(zip(GEOMETRY_FIELDS, floats[:9]))
    r_max = floats[9]
    recomputed = hashlib.sha256(
        _FINGERPRINT_PAYLOAD.pack(
            *floats[:9], r_max, n_detector, n_sections, mode_code
        )
    ).digest()
    if recomputed != fingerprint:
        raise DataError("table fingerprint does not match its header fields")
    if n_widths != n_sections:
        raise DataError(
            f"table declares {n_widths} rows for {n_sections} sections"
        )
    expected = _HEADER.size + n_widths * n_detector * 16
    if len(raw) != expected:
        raise DataError(
            f"table file holds {len(raw)} bytes, header declares {expected}"
        )
    rows = np.frombuffer(raw, dtype="<c16", offset=_HEADER.size).reshape(
        n_widths, n_detector
    )
    return SlitFieldTable(
        mode=MODE_NAMES[mode_code],
        n_sections=n_sections,
        n_detector=n_detector,
        r_max=r_max,
        geometry=geometry,
        rows=rows,
        fingerprint=fingerprint,
    )


def _open_runs(sections: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Start indices and lengths of the maximal runs of ones."""
    padded = np.concatenate(([0], sections, [0]))
    steps = np.flatnonzero(np.diff(padded))
    starts = steps[0::2]
    lengths = steps[1::2] - starts
    return starts, lengths


def mask_pattern(sections: np.ndarray, table: SlitFieldTable) -> np.ndarray:
    """Peak-one intensity pattern of one mask, straight from the table.

    ``sections`` is a 1-D 0/1 array of length ``table.n_sections``.  An
    all-blocked mask yields an identically zero pattern.
    """
    sections = np.asarray(sections)
    if sections.shape != (table.n_sections,):
        raise ConfigError(
            f"mask has shape {sections.shape}, table expects "
            f"({table.n_sections},)"
        )
    starts, lengths = _open_runs(sections)
    if starts.size == 0:
        return np.zeros(table.n_detector, dtype=np.float64)
    n = table.n_sections
    half_width = 0.5 * table.geometry["section_width"]
    centers = np.array(
        [float(int(2 * s + L - n)) * half_width for s, L in zip(starts, lengths)],
        dtype=np.float64,
    )
    rows = np.stack([table.rows[int(L) - 1] for L in lengths])
    q = table.positions * table.phase_scale
    phases = np.exp(-1j * (centers[:, None] * q[None, :]))
    contributions = rows * phases
    amplitudes = contributions.sum(axis=0)
    values = amplitudes.real**2 + amplitudes.imag**2
    peak = values.max() if values.size else 0.0
    return values / peak if peak > 0.0 else values


def pattern_mse(
    mask_rows: np.ndarray, target_patterns: np.ndarray, table: SlitFieldTable
) -> float:
    """Mean squared difference between predicted-mask patterns and targets.

    Both patterns are peak-one normalised; the result is the mean over all
    records and detector points.  This is a monitoring metric for training,
    not the search fitness.
    """
    mask_rows = np.atleast_2d(np.asarray(mask_rows))
    target_patterns = np.atleast_2d(np.asarray(target_patterns, dtype=np.float64))
    if mask_rows.shape[0] != target_patterns.shape[0]:
        raise ConfigError(
            f"{mask_rows.shape[0]} masks for {target_patterns.shape[0]} patterns"
        )
    if target_patterns.shape[1] != table.n_detector:
        raise ConfigError(
            f"patterns have {target_patterns.shape[1]} points, table expects "
            f"{table.n_detector}"
        )
    total = 0.0
    for row, target in zip(mask_rows, target_patterns):
        predicted = mask_pattern(row, table)
        diff = predicted - target
        total += float(np.mean(diff * diff))
    return total / mask_rows.shape[0]
