"""Mask/pattern corpus generation and its on-disk formats.

Records pair a random mask with its forward pattern; a supervised inverse
model trains on exactly this pairing. Masks are drawn with every section
open with probability one half, independently; the all-blocked mask has no
pattern worth learning and is redrawn. Each record draws from its own
counter-derived random stream, so a corpus is reproducible from (seed,
count) alone and insensitive to generation order.

Binary layout ("MWLD", version 1, little-endian, offsets in bytes; prose
copy in docs/formats.md):

    0   magic          4s   b"MWLD"
    4   version        u32  1
    8   flags          u32  bit 0: records carry fft feature blocks
    12  mode           u32  0 = matter, 1 = em
    16  n_sections     u32
    20  n_det          u32
    24  record_count   u64
    32  fingerprint    32s  same canonical digest as the slit table
    64  geometry block 9 f64 + r_max f64 (same order as the slit table)
    144 records

Each record is n_sections mask bytes (0/1), n_det f64 pattern values and,
when flagged, two blocks of floor(n_det/2)+1 f64 (one-sided fft modulus,
then principal-value angle). The summary checksum is SHA-256 over all
record bytes in file order.

The text export is one JSON object per line with ``mask`` and ``pattern``
arrays; it exists so downstream consumers need no binary reader.
"""

from __future__ import annotations

import hashlib
import json
import struct
from dataclasses import dataclass

import numpy as np

from .errors import (
    BadMagicError,
    BadVersionError,
    ConfigurationError,
    DataFormatError,
    PartialWriteError,
    TruncatedFileError,
)
from .fields import check_mode, forward
from .geometry import DetectorGrid, GeometryConfig, Mask
from .table import MODE_CODES, MODE_NAMES, SlitTable, geometry_fingerprint

MAGIC = b"MWLD"
VERSION = 1
FLAG_FEATURES = 1

_HEAD = struct.Struct("<4s5IQ32s10d")


def random_mask(rng: np.random.Generator, n_sections: int) -> np.ndarray:
    """One mask row, each section open with probability one half."""
    return rng.integers(0, 2, size=n_sections, dtype=np.uint8)


def nonzero_random_mask(rng: np.random.Generator, n_sections: int) -> np.ndarray:
    """Like :func:`random_mask` but redraws the all-blocked mask."""
    while True:
        row = random_mask(rng, n_sections)
        if row.any():
            return row


def record_streams(seed: int, count: int) -> list[np.random.Generator]:
    """Independent per-record generators derived from one seed."""
    children = np.random.SeedSequence(seed).spawn(count)
    return [np.random.Generator(np.random.PCG64(c)) for c in children]


def compute_fft_features(pattern_values: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """One-sided spectrum of a pattern: modulus and principal angle.

    Both outputs have length floor(n)/2 + 1 for n grid points.
    """
    transform = np.fft.rfft(np.asarray(pattern_values, dtype=np.float64))
    return np.abs(transform), np.angle(transform)


@dataclass(frozen=True)
class DatasetSummary:
    records_written: int
    checksum: str


@dataclass(frozen=True)
class DatasetHeader:
    geometry: GeometryConfig
    grid: DetectorGrid
    mode: str
    record_count: int
    with_features: bool

    @property
    def fingerprint(self) -> bytes:
        return geometry_fingerprint(self.geometry, self.grid, self.mode)


def _pack_header(
    geometry: GeometryConfig,
    grid: DetectorGrid,
    mode: str,
    count: int,
    with_features: bool,
) -> bytes:
    return _HEAD.pack(
        MAGIC,
        VERSION,
        FLAG_FEATURES if with_features else 0,
        MODE_CODES[mode],
        geometry.n_sections,
        grid.n_points,
        count,
        geometry_fingerprint(geometry, grid, mode),
        geometry.wavelength,
        geometry.source_distance,
        geometry.screen_distance,
        geometry.membrane_thickness,
        geometry.c3_coefficient,
        geometry.particle_mass,
        geometry.width_reduction,
        geometry.section_width,
        geometry.amplitude,
        grid.r_max,
    )


def generate_dataset(
    count: int,
    geometry: GeometryConfig,
    grid: DetectorGrid,
    mode: str,
    seed: int,
    sink,
    *,
    with_features: bool = False,
    table: SlitTable | None = None,
) -> DatasetSummary:
    """Stream ``count`` records into a binary sink.

    The summary checksum covers every record byte written; a sink failure
    surfaces as a partial-output error carrying how many complete records
    landed before it.
    """
    check_mode(mode)
    if count < 0:
        raise ConfigurationError(f"record count must be non-negative, got {count}")
    digest = hashlib.sha256()
    written = 0
    try:
        sink.write(_pack_header(geometry, grid, mode, count, with_features))
        for rng in record_streams(seed, count):
            row = nonzero_random_mask(rng, geometry.n_sections)
            pattern = forward(Mask(row), geometry, grid, mode, table)
            payload = row.tobytes() + pattern.values.astype("<f8").tobytes()
            if with_features:
                modulus, angle = compute_fft_features(pattern.values)
                payload += modulus.astype("<f8").tobytes()
                payload += angle.astype("<f8").tobytes()
            sink.write(payload)
            digest.update(payload)
            written += 1
    except OSError as exc:
        raise PartialWriteError(
            f"sink failed after {written} complete records: {exc}", written
        ) from exc
    return DatasetSummary(records_written=written, checksum=digest.hexdigest())


def generate_dataset_file(count, geometry, grid, mode, seed, path, **kwargs):
    with open(path, "wb") as fh:
        return generate_dataset(count, geometry, grid, mode, seed, fh, **kwargs)


def load_dataset(path):
    """Read a corpus back.

    Returns (header, masks, patterns, features) where features is None when
    the file carries none, and otherwise an array of shape
    (count, 2, floor(n_det/2)+1) holding modulus then angle per record.
    """
    with open(path, "rb") as fh:
        raw = fh.read()
    if len(raw) < _HEAD.size:
        raise TruncatedFileError(
            f"file holds {len(raw)} bytes, header alone needs {_HEAD.size}"
        )
    (
        magic,
        version,
        flags,
        mode_code,
        n_sections,
        n_det,
        record_count,
        stored_fp,
        *geom_fields,
    ) = _HEAD.unpack_from(raw)
    if magic != MAGIC:
        raise BadMagicError(f"expected magic {MAGIC!r}, found {magic!r}")
    if version != VERSION:
        raise BadVersionError(f"unsupported version {version}, expected {VERSION}")
    if mode_code not in MODE_NAMES:
        raise DataFormatError(f"unknown mode code {mode_code}")
    geometry = GeometryConfig(
        wavelength=geom_fields[0],
        source_distance=geom_fields[1],
        screen_distance=geom_fields[2],
        membrane_thickness=geom_fields[3],
        c3_coefficient=geom_fields[4],
        particle_mass=geom_fields[5],
        width_reduction=geom_fields[6],
        section_width=geom_fields[7],
        amplitude=geom_fields[8],
        n_sections=n_sections,
    )
    grid = DetectorGrid(r_max=geom_fields[9], n_points=n_det)
    mode = MODE_NAMES[mode_code]
    if stored_fp != geometry_fingerprint(geometry, grid, mode):
        raise DataFormatError("stored fingerprint does not match the header fields")
    with_features = bool(flags & FLAG_FEATURES)
    n_feat = n_det // 2 + 1
    rec_bytes = n_sections + 8 * n_det + (16 * n_feat if with_features else 0)
    expected = _HEAD.size + record_count * rec_bytes
    if len(raw) != expected:
        raise TruncatedFileError(
            f"file holds {len(raw)} bytes, header declares {expected}"
        )
    masks = np.empty((record_count, n_sections), dtype=np.uint8)
    patterns = np.empty((record_count, n_det), dtype=np.float64)
    features = (
        np.empty((record_count, 2, n_feat), dtype=np.float64) if with_features else None
    )
    offset = _HEAD.size
    for i in range(record_count):
        masks[i] = np.frombuffer(raw, np.uint8, n_sections, offset)
        offset += n_sections
        patterns[i] = np.frombuffer(raw, "<f8", n_det, offset)
        offset += 8 * n_det
        if with_features:
            features[i, 0] = np.frombuffer(raw, "<f8", n_feat, offset)
            offset += 8 * n_feat
            features[i, 1] = np.frombuffer(raw, "<f8", n_feat, offset)
            offset += 8 * n_feat
    header = DatasetHeader(
        geometry=geometry,
        grid=grid,
        mode=mode,
        record_count=record_count,
        with_features=with_features,
    )
    return header, masks, patterns, features


def verify_records(
    header: DatasetHeader,
    masks: np.ndarray,
    patterns: np.ndarray,
    *,
    table: SlitTable | None = None,
    step: int = 100,
) -> int:
    """Recompute every ``step``-th record's pattern and compare exactly.

    Returns how many records were checked; any disagreement is a format
    error (the file does not contain what it claims).
    """
    checked = 0
    for i in range(0, header.record_count, step):
        recomputed = forward(
            Mask(masks[i]), header.geometry, header.grid, header.mode, table
        )
        if not np.array_equal(recomputed.values, patterns[i]):
            raise DataFormatError(
                f"record {i} does not reproduce under the forward model"
            )
        checked += 1
    return checked


def split_indices(
    count: int, seed: int
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Disjoint train/validation/test index arrays.

    One tenth of the records is held out for test and one tenth of the
    remainder for validation (a 81/9/10 split on round counts), after a
    seeded shuffle.
    """
    if count < 0:
        raise ConfigurationError(f"count must be non-negative, got {count}")
    perm = np.random.default_rng(seed).permutation(count)
    n_test = count // 10
    n_val = (count - n_test) // 10
    n_train = count - n_test - n_val
    return (
        perm[:n_train],
        perm[n_train : n_train + n_val],
        perm[n_train + n_val :],
    )


def export_jsonl(masks: np.ndarray, patterns: np.ndarray, sink) -> int:
    """Write one {"mask": ..., "pattern": ...} object per record."""
    n = 0
    for row, pattern in zip(masks, patterns):
        obj = {
            "mask": [int(v) for v in row],
            "pattern": [float(v) for v in pattern],
        }
        sink.write(json.dumps(obj, separators=(",", ":")) + "\n")
        n += 1
    return n
