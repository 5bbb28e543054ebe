"""Closed-form Fourier spectrum of an ideal-slit intensity pattern.

For hard-edged openings the screen pattern is a sum over slit pairs (n, m)
of terms exp(i q (x_m - x_n)) sin(q d_n / 2) sin(q d_m / 2) / q^2 (up to the
constant prefactors dropped everywhere in this package), with q the screen
frequency. Each pair term has an elementary Fourier transform: writing
a_n = k0 d_n / (2 L2) and g = k0 (x_m - x_n) / L2 for the pair's width and
beat scales, the transform of sin(a_n r) sin(a_m r) / r^2 shifted by g is
piecewise linear in the conjugate variable with four kinks,

    (pi/4) [ |w - g - (a_n + a_m)| + |w - g + (a_n + a_m)|
           - |w - g - (a_n - a_m)| - |w - g + (a_n - a_m)| ],

a symmetric "tent" supported on |w - g| <= a_n + a_m. In the kappa = w/2pi
convention used here the four kink frequencies of a pair are the shifts
c1..c4 below divided by 2pi: c1/c2 are the inner kinks (width difference),
c3/c4 the outer ones (width sum). Summing tents over ordered pairs and
converting to the same reduced prefactor convention as the forward model
gives the spectrum evaluated by :func:`em_pattern_spectrum`.

The spectrum is exactly zero outside max over pairs of |g| + a_n + a_m,
which for nanometre slit scales puts all support at kappa of order
1e-5 / wavelength.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import ConfigurationError
from .geometry import GeometryConfig, SlitOpening


@dataclass(frozen=True)
class SpectrumShifts:
    """Kink positions (angular units) of one slit pair's tent."""

    c1: float
    c2: float
    c3: float
    c4: float

    @property
    def kink_frequencies(self) -> tuple[float, float, float, float]:
        two_pi = 2.0 * np.pi
        return (self.c1 / two_pi, self.c2 / two_pi, self.c3 / two_pi, self.c4 / two_pi)


def pair_shifts(
    opening_n: SlitOpening, opening_m: SlitOpening, geometry: GeometryConfig
) -> SpectrumShifts:
    """Tent kink shifts of the (n, m) slit pair.

    All four are the beat scale k0 (x_m - x_n) / L2 offset by the half sum
    and half difference of the two slit frequencies; the arithmetic below is
    a plain linear combination of centers and widths, exact apart from one
    rounding per term.
    """
    s = geometry.wavenumber / (2.0 * geometry.screen_distance)
    xn, dn = opening_n.center, opening_n.width
    xm, dm = opening_m.center, opening_m.width
    return SpectrumShifts(
        c1=s * (2.0 * xm - 2.0 * xn - dn + dm),
        c2=-s * (2.0 * xn - 2.0 * xm - dn + dm),
        c3=s * (2.0 * xm - 2.0 * xn + dn + dm),
        c4=-s * (2.0 * xn - 2.0 * xm + dn + dm),
    )


def em_pattern_spectrum(
    openings: Sequence[SlitOpening],
    geometry: GeometryConfig,
    kappa,
) -> np.ndarray:
    """Closed-form spectrum of the ideal-slit pattern at frequencies kappa.

    Matches the Fourier transform (integral of P(r) exp(-2 pi i kappa r) dr)
    of the un-normalized forward pattern in ``em`` mode, in the same
    reduced-prefactor convention. Piecewise linear, non-negative, compactly
    supported, and even in kappa for any mask.
    """
    if not openings:
        raise ConfigurationError("spectrum of an empty mask is undefined")
    kap = np.atleast_1d(np.asarray(kappa, dtype=np.float64))
    two_pi = 2.0 * np.pi
    acc = np.zeros(kap.shape, dtype=np.float64)
    for op_n in openings:
        for op_m in openings:
            sh = pair_shifts(op_n, op_m, geometry)
            acc += (
                np.abs(kap - sh.c3 / two_pi)
                + np.abs(kap - sh.c4 / two_pi)
                - np.abs(kap - sh.c1 / two_pi)
                - np.abs(kap - sh.c2 / two_pi)
            )
    delta = geometry.wavenumber / geometry.screen_distance
    scale = 2.0 * np.pi**2 / (delta * delta)
    out = scale * acc
    return out if np.ndim(kappa) else float(out[0])


def kink_frequencies(
    openings: Sequence[SlitOpening], geometry: GeometryConfig
) -> np.ndarray:
    """Sorted unique kink frequencies over all ordered slit pairs."""
    kinks: list[float] = []
    for op_n in openings:
        for op_m in openings:
            kinks.extend(pair_shifts(op_n, op_m, geometry).kink_frequencies)
    return np.unique(np.asarray(kinks, dtype=np.float64))


def support_bound(openings: Sequence[SlitOpening], geometry: GeometryConfig) -> float:
    """Largest |kappa| carrying spectral weight."""
    kinks = kink_frequencies(openings, geometry)
    return float(np.max(np.abs(kinks)))
