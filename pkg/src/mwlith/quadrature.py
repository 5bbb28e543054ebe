"""Composite Gauss-Legendre quadrature for oscillatory slit integrals.

The integrals of interest are Fourier transforms of a slit transmission
profile: smooth apart from rapid oscillation from (a) the detector-side
kernel exp(i q x) and (b) the dispersion phase, which steepens sharply
toward the slit faces. Panels are laid out with three rules:

* a uniform split sized so the Fourier kernel advances at most
  ``phase_budget`` radians per panel at the largest |q| requested (the
  kernel is entire, so a full turn per panel is cheap for the orders used),
* breakpoints where the dispersion phase crosses successive multiples of
  the tighter ``edge_phase_budget``, found by bisection on its monotone
  magnitude, and
* breakpoints at distances (2^j - 1) * ``edge_scale`` from each face, so
  panel sizes shrink geometrically toward the faces. The phase blows up a
  distance ``edge_scale`` beyond the face, and Gauss-Legendre needs panels
  no larger than their distance to that blow-up to converge fast there.

Each panel is then integrated with fixed-order Gauss-Legendre at two orders;
disagreement beyond the target tolerance raises, naming the worst detector
point. Convergence is spectral, so the two-order check is a sharp guard.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Callable

import numpy as np

from .errors import NumericalError

#: Default per-panel phase advance of the Fourier kernel (radians).
PHASE_BUDGET = 2.0 * np.pi
#: Default per-panel advance of the dispersion phase (radians); tighter,
#: because that phase concentrates its variation at the panel ends.
EDGE_PHASE_BUDGET = 0.5 * np.pi
#: Default pair of Gauss-Legendre orders used for the convergence check.
ORDERS = (12, 24)
#: Hard cap on panel count; exceeding it means the integrand is out of scope.
MAX_PANELS = 4096


@lru_cache(maxsize=None)
def _leggauss(order: int) -> tuple[np.ndarray, np.ndarray]:
    nodes, weights = np.polynomial.legendre.leggauss(order)
    nodes.setflags(write=False)
    weights.setflags(write=False)
    return nodes, weights


def composite_edges(
    half_width: float,
    q_max: float,
    phase_magnitude: Callable[[float], float] | None = None,
    *,
    edge_scale: float | None = None,
    phase_budget: float = PHASE_BUDGET,
    edge_phase_budget: float = EDGE_PHASE_BUDGET,
    max_panels: int = MAX_PANELS,
) -> np.ndarray:
    """Panel breakpoints on [-half_width, half_width].

    ``phase_magnitude`` maps x in [0, half_width] to the magnitude of the
    integrand's intrinsic phase; it must be monotonically non-decreasing.
    ``edge_scale`` is the distance beyond the faces at which that phase
    diverges; passing it enables the geometric face refinement.
    Refinement breakpoints are mirrored about the center.
    """
    if half_width <= 0.0:
        raise ValueError("half_width must be positive")
    n_uniform = max(1, int(np.ceil(2.0 * half_width * q_max / phase_budget)))
    if n_uniform > max_panels:
        raise NumericalError(
            f"oscillatory kernel needs {n_uniform} panels, cap is {max_panels}"
        )
    edges = list(np.linspace(-half_width, half_width, n_uniform + 1))

    if phase_magnitude is not None:
        p0 = phase_magnitude(0.0)
        p_edge = phase_magnitude(half_width)
        n_levels = int(np.floor((p_edge - p0) / edge_phase_budget))
        if n_levels > max_panels:
            raise NumericalError(
                f"dispersion phase spans {p_edge - p0:.1f} rad and needs "
                f"{n_levels} panels, cap is {max_panels}"
            )
        for k in range(1, n_levels + 1):
            target = p0 + k * edge_phase_budget
            lo, hi = 0.0, half_width
            # Fixed-count bisection converges to the float limit and keeps
            # the construction free of tolerance knobs.
            for _ in range(80):
                mid = 0.5 * (lo + hi)
                if phase_magnitude(mid) < target:
                    lo = mid
                else:
                    hi = mid
            edges.append(hi)
            edges.append(-hi)

    if edge_scale is not None and edge_scale > 0.0:
        j = 1
        while (offset := (2.0**j - 1.0) * edge_scale) < half_width:
            edges.append(half_width - offset)
            edges.append(offset - half_width)
            j += 1

    out = np.unique(np.asarray(edges, dtype=np.float64))
    if out.size - 1 > max_panels:
        raise NumericalError(
            f"panel layout needs {out.size - 1} panels, cap is {max_panels}"
        )
    return out


def _panel_nodes(edges: np.ndarray, order: int) -> tuple[np.ndarray, np.ndarray]:
    """All nodes and weights of an ``order``-point rule on every panel."""
    base_x, base_w = _leggauss(order)
    lo = edges[:-1]
    hi = edges[1:]
    half = 0.5 * (hi - lo)
    mid = 0.5 * (hi + lo)
    x = (mid[:, None] + half[:, None] * base_x[None, :]).ravel()
    w = (half[:, None] * base_w[None, :]).ravel()
    return x, w


def fourier_integral(
    profile: Callable[[np.ndarray], np.ndarray],
    edges: np.ndarray,
    q: np.ndarray,
    *,
    rel_tol: float = 1.0e-8,
    orders: tuple[int, int] = ORDERS,
    grid_positions: np.ndarray | None = None,
    chunk: int = 128,
) -> np.ndarray:
    """integral profile(x) * exp(i q x) dx over the panel layout, per q.

    Evaluated at both orders; the higher-order result is returned after the
    two agree to ``rel_tol`` relative to the result's largest magnitude.
    """
    results = []
    for order in orders:
        x, w = _panel_nodes(edges, order)
        g = w.astype(np.complex128) * profile(x)
        out = np.empty(q.shape, dtype=np.complex128)
        for start in range(0, q.size, chunk):
            sl = slice(start, min(start + chunk, q.size))
            out[sl] = np.exp(1j * np.outer(q[sl], x)) @ g
        results.append(out)
    low, high = results
    scale = float(np.max(np.abs(high)))
    if scale > 0.0:
        err = np.abs(high - low)
        worst = int(np.argmax(err))
        if err[worst] > rel_tol * scale:
            where = (
                f"detector point {worst}"
                if grid_positions is None
                else f"detector point {worst} (r = {grid_positions[worst]:.4e} m)"
            )
            raise NumericalError(
                f"quadrature disagreement {err[worst] / scale:.2e} exceeds "
                f"{rel_tol:.1e} at {where}"
            )
    return high
