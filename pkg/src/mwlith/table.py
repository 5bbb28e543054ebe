"""Precomputed per-width slit fields and their on-disk format.

Every opening of a mask is a whole number of sections wide, so a forward
evaluation only ever needs the slit fields of widths 1..n_sections times the
section width on the fixed detector grid. Building that table once turns a
mask evaluation into a few row lookups and a phased sum, which is what makes
large searches affordable.

On-disk layout ("MWST", version 1, all fields little-endian, offsets in
bytes; see docs/formats.md for the same table in prose):

    0   magic            4s   b"MWST"
    4   version          u32  1
    8   mode             u32  0 = matter, 1 = em
    12  n_widths         u32  number of rows (equals n_sections)
    16  n_det            u32  detector points per row
    20  n_sections       u32
    24  wavelength       f64  \
    32  source_distance  f64  |
    40  screen_distance  f64  |
    48  membrane_thickness f64|
    56  c3_coefficient   f64  +- geometry block, order fixed
    64  particle_mass    f64  |
    72  width_reduction  f64  |
    80  section_width    f64  |
    88  amplitude        f64  /
    96  r_max            f64  detector half-extent
    104 fingerprint      32s  SHA-256 over the canonical header encoding
    136 rows             n_widths * n_det complex128 (re, im interleaved)

Row w-1 is the field of a slit spanning w sections. The fingerprint covers
everything that determines the physical content (geometry block, grid,
mode), so two files with equal fingerprints hold interchangeable physics.
"""

from __future__ import annotations

import hashlib
import struct
from dataclasses import dataclass

import numpy as np

from .errors import (
    BadMagicError,
    BadVersionError,
    ConfigurationError,
    FingerprintMismatchError,
    TruncatedFileError,
)
from .fields import check_mode, slit_field
from .geometry import DetectorGrid, GeometryConfig

MAGIC = b"MWST"
VERSION = 1
MODE_CODES = {"matter": 0, "em": 1}
MODE_NAMES = {code: name for name, code in MODE_CODES.items()}

_HEAD = struct.Struct("<4s5I10d32s")

# Canonical encoding hashed into the fingerprint: the geometry block, the
# grid spec and the mode, in this exact order.
_CANONICAL = struct.Struct("<9ddIII")


def _geometry_block(geometry: GeometryConfig) -> tuple[float, ...]:
    return (
        geometry.wavelength,
        geometry.source_distance,
        geometry.screen_distance,
        geometry.membrane_thickness,
        geometry.c3_coefficient,
        geometry.particle_mass,
        geometry.width_reduction,
        geometry.section_width,
        geometry.amplitude,
    )


def geometry_fingerprint(
    geometry: GeometryConfig, grid: DetectorGrid, mode: str
) -> bytes:
    """SHA-256 digest of everything that fixes the physical content."""
    check_mode(mode)
    payload = _CANONICAL.pack(
        *_geometry_block(geometry),
        grid.r_max,
        grid.n_points,
        geometry.n_sections,
        MODE_CODES[mode],
    )
    return hashlib.sha256(payload).digest()


@dataclass(frozen=True)
class SlitTable:
    """Per-width slit fields on a fixed grid, geometry and mode."""

    geometry: GeometryConfig
    grid: DetectorGrid
    mode: str
    rows: np.ndarray

    def __post_init__(self):
        check_mode(self.mode)
        rows = np.asarray(self.rows, dtype=np.complex128)
        if rows.shape != (self.geometry.n_sections, self.grid.n_points):
            raise ConfigurationError(
                f"table rows have shape {rows.shape}, expected "
                f"({self.geometry.n_sections}, {self.grid.n_points})"
            )
        rows.setflags(write=False)
        object.__setattr__(self, "rows", rows)

    @property
    def fingerprint(self) -> bytes:
        return geometry_fingerprint(self.geometry, self.grid, self.mode)

    def check_compatible(
        self, geometry: GeometryConfig, grid: DetectorGrid, mode: str
    ):
        if self.fingerprint != geometry_fingerprint(geometry, grid, mode):
            raise ConfigurationError(
                "slit table was built for a different geometry, grid or mode"
            )

    def row_for_width(self, width: float, geometry: GeometryConfig) -> np.ndarray:
        """Field row of an opening of the given physical width."""
        units = width / geometry.section_width
        index = int(round(units)) - 1
        if not 0 <= index < self.rows.shape[0] or abs(units - round(units)) > 1e-9:
            raise ConfigurationError(
                f"width {width!r} is not a whole number of sections in range"
            )
        return self.rows[index]


def build_table(
    geometry: GeometryConfig,
    grid: DetectorGrid,
    mode: str,
    *,
    rel_tol: float = 1.0e-8,
) -> SlitTable:
    """Compute the field of every admissible width on the grid.

    Same code path as the direct per-mask evaluation, so looked-up and
    recomputed rows are bit-identical; building twice is deterministic.
    """
    check_mode(mode)
    rows = np.empty((geometry.n_sections, grid.n_points), dtype=np.complex128)
    for w_units in range(1, geometry.n_sections + 1):
        width = float(w_units) * geometry.section_width
        rows[w_units - 1] = slit_field(
            width, geometry, grid, mode, rel_tol=rel_tol
        ).amplitudes
    return SlitTable(geometry=geometry, grid=grid, mode=mode, rows=rows)


def save_table(table: SlitTable, path) -> None:
    header = _HEAD.pack(
        MAGIC,
        VERSION,
        MODE_CODES[table.mode],
        table.rows.shape[0],
        table.grid.n_points,
        table.geometry.n_sections,
        *_geometry_block(table.geometry),
        table.grid.r_max,
        table.fingerprint,
    )
    with open(path, "wb") as fh:
        fh.write(header)
        fh.write(np.ascontiguousarray(table.rows, dtype="<c16").tobytes())


def load_table(
    path,
    *,
    expect: tuple[GeometryConfig, DetectorGrid, str] | None = None,
) -> SlitTable:
    """Read a table back, verifying format, fingerprint and length.

    ``expect`` demands a specific (geometry, grid, mode); a file holding
    different physics is rejected even if internally consistent.
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
        mode_code,
        n_widths,
        n_det,
        n_sections,
        *geom_fields,
        stored_fp,
    ) = _HEAD.unpack_from(raw)
    if magic != MAGIC:
        raise BadMagicError(f"expected magic {MAGIC!r}, found {magic!r}")
    if version != VERSION:
        raise BadVersionError(f"unsupported version {version}, expected {VERSION}")
    if mode_code not in MODE_NAMES:
        raise BadVersionError(f"unknown mode code {mode_code}")
    r_max = geom_fields[9]
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
    grid = DetectorGrid(r_max=r_max, n_points=n_det)
    mode = MODE_NAMES[mode_code]
    recomputed = geometry_fingerprint(geometry, grid, mode)
    if stored_fp != recomputed:
        raise FingerprintMismatchError(
            "stored fingerprint does not match the header fields"
        )
    if n_widths != n_sections:
        raise TruncatedFileError(
            f"header declares {n_widths} rows for {n_sections} sections"
        )
    expected = _HEAD.size + n_widths * n_det * 16
    if len(raw) != expected:
        raise TruncatedFileError(
            f"file holds {len(raw)} bytes, header declares {expected}"
        )
    rows = np.frombuffer(raw, dtype="<c16", offset=_HEAD.size).reshape(
        n_widths, n_det
    )
    table = SlitTable(geometry=geometry, grid=grid, mode=mode, rows=rows)
    if expect is not None:
        exp_geometry, exp_grid, exp_mode = expect
        if table.fingerprint != geometry_fingerprint(
            exp_geometry, exp_grid, exp_mode
        ):
            raise FingerprintMismatchError(
                "table fingerprint does not match the requested geometry, "
                "grid and mode"
            )
    return table
