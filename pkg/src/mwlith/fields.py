"""Far-field propagation of a masked matter wave to the detection screen.

The screen-side field of one slit is the Fourier transform of its
transmission profile evaluated at spatial frequency q = k0 r / L2, and a
full mask superposes slit fields with the phase factor exp(-i q x_n) of each
slit center. Constant prefactors and the global propagation phase are
dropped throughout: recorded patterns are normalized to a unit peak, so only
the shape carries information.

Two transmission models are supported:

* ``em``: ideal hard-edged openings (the classical reference), where the
  slit field has the closed sinc form, and
* ``matter``: openings narrowed by ``width_reduction`` on each side and
  carrying the dispersion phase, integrated numerically.

Openings narrower than twice the width reduction transmit nothing and an
all-blocked mask yields an identically zero pattern; both are valid inputs
here and are rejected only where a pattern is actually required.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Literal

import numpy as np

from .dispersion import _phase, matter_transmission
from .errors import ConfigurationError, NumericalError
from .geometry import DetectorGrid, GeometryConfig, Mask, mask_to_openings
from .quadrature import composite_edges, fourier_integral

Mode = Literal["matter", "em"]

MODES = ("matter", "em")


@dataclass(frozen=True)
class WaveField:
    """Complex field amplitude on a detector grid (prefactors dropped)."""

    grid: DetectorGrid
    amplitudes: np.ndarray

    def __post_init__(self):
        amp = np.asarray(self.amplitudes, dtype=np.complex128)
        if amp.shape != self.grid.positions.shape:
            raise ConfigurationError("field amplitudes do not match the grid")
        amp.setflags(write=False)
        object.__setattr__(self, "amplitudes", amp)


@dataclass(frozen=True)
class IntensityPattern:
    """Real intensity on a detector grid.

    ``normalization`` is ``"peak-one"`` (unit maximum, unless the pattern is
    identically zero) or ``"raw"``.
    """

    grid: DetectorGrid
    values: np.ndarray
    normalization: str = "peak-one"

    def __post_init__(self):
        vals = np.asarray(self.values, dtype=np.float64)
        if vals.shape != self.grid.positions.shape:
            raise ConfigurationError("pattern values do not match the grid")
        if self.normalization not in ("peak-one", "raw"):
            raise ConfigurationError(
                f"unknown normalization {self.normalization!r}"
            )
        vals.setflags(write=False)
        object.__setattr__(self, "values", vals)


def check_mode(mode: str) -> str:
    if mode not in MODES:
        raise ConfigurationError(f"mode must be one of {MODES}, got {mode!r}")
    return mode


def _frequencies(grid: DetectorGrid, geometry: GeometryConfig) -> np.ndarray:
    """|q| per detector point. Slit fields are even in q for centered slits
    (real symmetric profiles in em mode, conjugate-even phase profiles in
    matter mode), so evaluating on |q| enforces that symmetry exactly."""
    return np.abs(grid.positions) * (geometry.wavenumber / geometry.screen_distance)


def single_slit_field_em(
    width: float, geometry: GeometryConfig, grid: DetectorGrid
) -> WaveField:
    """Closed-form field of one ideal slit of the given width.

    width * sinc(q width / 2); the q = 0 value is the series limit (the
    width itself), not an epsilon offset.
    """
    if width <= 0.0:
        raise ConfigurationError(f"slit width must be positive, got {width!r}")
    q = _frequencies(grid, geometry)
    values = width * np.sinc(q * (width / (2.0 * np.pi)))
    return WaveField(grid=grid, amplitudes=values.astype(np.complex128))


def single_slit_field_mw(
    width: float,
    geometry: GeometryConfig,
    grid: DetectorGrid,
    *,
    rel_tol: float = 1.0e-8,
) -> WaveField:
    """Numerically integrated field of one matter-wave slit.

    The integrand is the narrowed, phase-carrying transmission profile; the
    panel layout refines toward the slit faces where the dispersion phase
    steepens. A slit at or below twice the width reduction returns an
    identically zero field.
    """
    if width <= 0.0:
        raise ConfigurationError(f"slit width must be positive, got {width!r}")
    half_open = 0.5 * width - geometry.width_reduction
    if half_open <= 0.0:
        return WaveField(grid=grid, amplitudes=np.zeros(grid.n_points, np.complex128))
    q = _frequencies(grid, geometry)

    phase_mag = None
    if geometry.c3_coefficient > 0.0:
        if geometry.width_reduction <= 0.0:
            # The phase magnitude is unbounded at the geometric edge; no
            # finite panel layout can resolve it.
            raise NumericalError(
                f"dispersion phase of a {width!r} m slit is unbounded at the "
                "face; a positive width_reduction is required when "
                "c3_coefficient > 0"
            )

        def phase_mag(x: float) -> float:
            return abs(float(_phase(np.float64(x), width, geometry)))

    edges = composite_edges(
        half_open,
        float(np.max(q)),
        phase_mag,
        edge_scale=geometry.width_reduction if phase_mag is not None else None,
    )
    amplitudes = fourier_integral(
        lambda x: matter_transmission(x, width, geometry),
        edges,
        q,
        rel_tol=rel_tol,
        grid_positions=grid.positions,
    )
    return WaveField(grid=grid, amplitudes=amplitudes)


def slit_field(
    width: float,
    geometry: GeometryConfig,
    grid: DetectorGrid,
    mode: str,
    *,
    rel_tol: float = 1.0e-8,
) -> WaveField:
    check_mode(mode)
    if mode == "em":
        return single_slit_field_em(width, geometry, grid)
    return single_slit_field_mw(width, geometry, grid, rel_tol=rel_tol)


def intensity_values(amplitudes: np.ndarray) -> np.ndarray:
    return amplitudes.real**2 + amplitudes.imag**2


def peak_normalize(values: np.ndarray) -> np.ndarray:
    peak = values.max() if values.size else 0.0
    return values / peak if peak > 0.0 else values


def forward_field(
    mask: Mask,
    geometry: GeometryConfig,
    grid: DetectorGrid,
    mode: str,
    table=None,
) -> WaveField:
    """Superpose the slit fields of every opening of a mask.

    With ``table`` (a precomputed slit table on the same geometry, grid and
    mode) the per-width fields are looked up instead of recomputed; the two
    paths share every arithmetic step and agree bit for bit.
    """
    check_mode(mode)
    openings = mask_to_openings(mask, geometry)
    if table is not None:
        table.check_compatible(geometry, grid, mode)
    if not openings:
        return WaveField(grid=grid, amplitudes=np.zeros(grid.n_points, np.complex128))
    if table is not None:
        rows = np.stack(
            [table.row_for_width(o.width, geometry) for o in openings]
        )
    else:
        rows = np.stack(
            [slit_field(o.width, geometry, grid, mode).amplitudes for o in openings]
        )
    centers = np.array([o.center for o in openings], dtype=np.float64)
    q = grid.positions * (geometry.wavenumber / geometry.screen_distance)
    phases = np.exp(-1j * (centers[:, None] * q[None, :]))
    contributions = rows * phases
    return WaveField(grid=grid, amplitudes=contributions.sum(axis=0))


def forward(
    mask: Mask,
    geometry: GeometryConfig,
    grid: DetectorGrid,
    mode: str,
    table=None,
) -> IntensityPattern:
    """Peak-one normalized intensity pattern of a mask."""
    field = forward_field(mask, geometry, grid, mode, table)
    values = peak_normalize(intensity_values(field.amplitudes))
    return IntensityPattern(grid=grid, values=values, normalization="peak-one")
