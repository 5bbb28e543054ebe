"""Atom-surface interaction inside a slit: phase imprint and transmission.

A particle crossing the membrane picks up a position-dependent phase from the
attractive wall potential of both slit faces and is lost entirely within a
strip of width ``width_reduction`` next to each face. The phase closed form
treats each face as an infinite single-wall interface acting over the
membrane thickness; it is even in x and diverges toward the faces, which is
why the transmission window is narrowed before it is ever evaluated.
"""

from __future__ import annotations

import numpy as np

from .geometry import GeometryConfig

#: Reduced Planck constant (J s), 2018 CODATA.
HBAR = 1.054571817e-34


def _phase(x_arr: np.ndarray, width: float, geometry: GeometryConfig) -> np.ndarray:
    """Closed-form phase, no domain checks. Finite only for |x| < width/2."""
    d = width
    num = (
        -12.0
        * geometry.c3_coefficient
        * geometry.particle_mass
        * geometry.wavelength
        * geometry.membrane_thickness
        * d
        * (d * d + 12.0 * x_arr * x_arr)
    )
    den = HBAR * HBAR * np.pi * (d + 2.0 * x_arr) ** 3 * (d - 2.0 * x_arr) ** 3
    return num / den


def dispersion_phase(x, width: float, geometry: GeometryConfig):
    """Phase accumulated at transverse position ``x`` inside a slit.

    ``width`` is the geometric opening; ``x`` must lie strictly inside the
    narrowed window ``|x| < width/2 - width_reduction``. Accepts scalars or
    arrays. Strictly negative for a positive dispersion coefficient, with
    magnitude growing monotonically toward the slit faces.
    """
    x_arr = np.asarray(x, dtype=np.float64)
    half_open = 0.5 * width - geometry.width_reduction
    if np.any(np.abs(x_arr) >= half_open):
        raise ValueError(
            "dispersion phase requested outside the transmitting window "
            f"|x| < {half_open!r} of a {width!r} m slit"
        )
    out = _phase(x_arr, width, geometry)
    return out if np.ndim(x) else float(out)


def matter_transmission(x, width: float, geometry: GeometryConfig):
    """Complex transmission profile of one slit.

    Zero outside the narrowed window ``|x| <= width/2 - width_reduction``, a
    pure phase factor inside it. A slit no wider than twice the width
    reduction transmits nothing (a closed opening, not an error).
    """
    x_arr = np.atleast_1d(np.asarray(x, dtype=np.float64))
    out = np.zeros(x_arr.shape, dtype=np.complex128)
    half_open = 0.5 * width - geometry.width_reduction
    if half_open > 0.0:
        # Excluding the exact geometric edge keeps the phase finite when
        # width_reduction is zero.
        inside = (np.abs(x_arr) <= half_open) & (np.abs(x_arr) < 0.5 * width)
        if inside.any():
            out[inside] = np.exp(1j * _phase(x_arr[inside], width, geometry))
    return out if np.ndim(x) else complex(out[0])
