"""Bench geometry, binary masks and the detector grid.

All quantities are SI. The mask is a row of equally wide sections that are
either fully open (1) or fully blocked (0); adjacent open sections merge into
a single slit. The beamline is source -> mask -> detection screen with the
mask extent kept small enough that the far-field picture applies.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import ConfigurationError


@dataclass(frozen=True)
class GeometryConfig:
    """Physical parameters of source, mask membrane and screen.

    ``c3_coefficient`` (atom-surface dispersion strength, J m^3) and
    ``particle_mass`` (kg) depend on the atom/material pair and therefore
    have no default: they must come from the user's configuration.
    ``width_reduction`` is the per-side narrowing of each opening by the
    atom-surface interaction.
    """

    wavelength: float
    source_distance: float
    screen_distance: float
    membrane_thickness: float
    c3_coefficient: float
    particle_mass: float
    width_reduction: float = 1.0e-9
    section_width: float = 4.0e-9
    n_sections: int = 50
    amplitude: float = 1.0

    def __post_init__(self):
        positive = {
            "wavelength": self.wavelength,
            "source_distance": self.source_distance,
            "screen_distance": self.screen_distance,
            "membrane_thickness": self.membrane_thickness,
            "particle_mass": self.particle_mass,
            "section_width": self.section_width,
            "amplitude": self.amplitude,
        }
        for name, value in positive.items():
            if not value > 0.0:
                raise ConfigurationError(f"{name} must be positive, got {value!r}")
        if self.c3_coefficient < 0.0:
            raise ConfigurationError(
                f"c3_coefficient must be non-negative, got {self.c3_coefficient!r}"
            )
        if self.width_reduction < 0.0:
            raise ConfigurationError(
                f"width_reduction must be non-negative, got {self.width_reduction!r}"
            )
        if self.n_sections < 1:
            raise ConfigurationError(
                f"n_sections must be at least 1, got {self.n_sections!r}"
            )
        if not self.fresnel_number < 1.0:
            raise ConfigurationError(
                "far-field validity requires a Fresnel number below one; "
                f"got {self.fresnel_number:.3f} for a "
                f"{self.mask_extent * 1e9:.0f} nm mask"
            )

    @property
    def wavenumber(self) -> float:
        """Free-space wavenumber 2*pi/wavelength (derived, never stored)."""
        return 2.0 * np.pi / self.wavelength

    @property
    def mask_extent(self) -> float:
        """Full transverse width of the mask."""
        return self.n_sections * self.section_width

    @property
    def fresnel_number(self) -> float:
        """(half mask extent)^2 / (wavelength * screen distance)."""
        half = 0.5 * self.mask_extent
        return half * half / (self.wavelength * self.screen_distance)


@dataclass(frozen=True)
class DetectorGrid:
    """Uniform detection grid, symmetric about the optical axis.

    Positions are built as symmetric offsets times one rounded step so that
    reversing and negating the array reproduces it bit for bit, for any
    (odd or even) point count.
    """

    r_max: float = 15.0e-6
    n_points: int = 512
    positions: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if not self.r_max > 0.0:
            raise ConfigurationError(f"r_max must be positive, got {self.r_max!r}")
        if self.n_points < 2:
            raise ConfigurationError(
                f"n_points must be at least 2, got {self.n_points!r}"
            )
        step = 2.0 * self.r_max / (self.n_points - 1)
        offsets = np.arange(self.n_points, dtype=np.float64) - (self.n_points - 1) / 2.0
        positions = offsets * step
        positions.setflags(write=False)
        object.__setattr__(self, "positions", positions)

    @property
    def spacing(self) -> float:
        return 2.0 * self.r_max / (self.n_points - 1)

    def same_as(self, other: "DetectorGrid") -> bool:
        return self.n_points == other.n_points and self.r_max == other.r_max


@dataclass(frozen=True)
class Mask:
    """Binary open/blocked state of every mask section."""

    sections: np.ndarray

    def __post_init__(self):
        arr = np.asarray(self.sections)
        if arr.ndim != 1 or arr.size == 0:
            raise ConfigurationError("mask must be a non-empty one-dimensional array")
        values = np.unique(arr)
        if not np.isin(values, (0, 1)).all():
            raise ConfigurationError("mask sections must be 0 or 1")
        arr = arr.astype(np.uint8, copy=True)
        arr.setflags(write=False)
        object.__setattr__(self, "sections", arr)

    @classmethod
    def from_string(cls, text: str) -> "Mask":
        text = text.strip()
        if not text or set(text) - {"0", "1"}:
            raise ConfigurationError(
                f"mask string must contain only '0'/'1' characters, got {text!r}"
            )
        return cls(np.frombuffer(text.encode("ascii"), dtype=np.uint8) - ord("0"))

    def to_string(self) -> str:
        return "".join("1" if s else "0" for s in self.sections)

    @property
    def n_sections(self) -> int:
        return int(self.sections.size)

    def __eq__(self, other) -> bool:
        return isinstance(other, Mask) and np.array_equal(self.sections, other.sections)

    def __hash__(self) -> int:
        return hash(self.sections.tobytes())


@dataclass(frozen=True)
class SlitOpening:
    """One contiguous run of open sections: slit center and full width."""

    center: float
    width: float


def open_runs(sections: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Start indices and lengths of maximal runs of ones."""
    padded = np.concatenate(([0], sections, [0]))
    steps = np.flatnonzero(np.diff(padded))
    starts = steps[0::2]
    lengths = steps[1::2] - starts
    return starts, lengths


def mask_to_openings(mask: Mask, geometry: GeometryConfig) -> tuple[SlitOpening, ...]:
    """Decompose a mask into slit openings, sorted left to right.

    Centers are computed as an exact integer times half the section width so
    every center is representable the same way regardless of which run
    produced it.
    """
    if mask.n_sections != geometry.n_sections:
        raise ConfigurationError(
            f"mask has {mask.n_sections} sections, geometry expects "
            f"{geometry.n_sections}"
        )
    starts, lengths = open_runs(mask.sections)
    half_w = 0.5 * geometry.section_width
    n = geometry.n_sections
    return tuple(
        SlitOpening(
            center=float(int(2 * s + L - n)) * half_w,
            width=float(int(L)) * geometry.section_width,
        )
        for s, L in zip(starts, lengths)
    )
