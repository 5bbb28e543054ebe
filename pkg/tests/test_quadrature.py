import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from mwlith import NumericalError
from mwlith.quadrature import (
    MAX_PANELS,
    composite_edges,
    fourier_integral,
)


class TestCompositeEdges:
    def test_spans_the_interval(self):
        edges = composite_edges(2.0e-9, 1.0e9)
        assert edges[0] == -2.0e-9
        assert edges[-1] == 2.0e-9
        assert np.all(np.diff(edges) > 0.0)

    def test_uniform_panel_count_tracks_kernel_phase(self):
        # width * q_max = 40 rad of kernel phase, budget 2*pi per panel
        edges = composite_edges(2.0e-9, 1.0e10)
        n_uniform = int(np.ceil(40.0 / (2.0 * np.pi)))
        assert edges.size == n_uniform + 1

    def test_equiphase_breakpoints_hit_budget_multiples(self):
        phase = lambda x: (x / 1.0e-9) ** 2
        edges = composite_edges(2.0e-9, 1.0e9, phase)
        interior = edges[(edges > 0.0) & (edges < 2.0e-9)]
        # phase spans 4 rad; pi/2 budget puts breakpoints at phase 0.5pi, pi, 1.5pi
        levels = phase(interior)
        expected = 0.5 * np.pi * np.arange(1, levels.size + 1)
        assert np.allclose(levels, expected, rtol=1e-10)
        # mirrored about the center
        assert np.all(np.isin(-interior, edges))

    def test_geometric_face_refinement(self):
        edges = composite_edges(8.0e-9, 1.0e9, edge_scale=1.0e-9)
        offsets = 8.0e-9 - edges[edges > 0.0]
        # distances (2^j - 1) * 1 nm from the face, for j = 1, 2, 3
        for d in (1.0e-9, 3.0e-9, 7.0e-9):
            assert np.any(np.isclose(offsets, d, rtol=1e-12))

    def test_rejects_non_positive_half_width(self):
        with pytest.raises(ValueError):
            composite_edges(0.0, 1.0e9)

    def test_panel_cap_enforced(self):
        with pytest.raises(NumericalError, match="panels"):
            composite_edges(2.0e-9, 1.0e16)

    def test_runaway_phase_hits_cap(self):
        phase = lambda x: 1.0e7 * (x / 2.0e-9)
        with pytest.raises(NumericalError, match="panels"):
            composite_edges(2.0e-9, 1.0e9, phase)

    @given(st.floats(min_value=1e-10, max_value=1e-7),
           st.floats(min_value=1e6, max_value=1e11))
    def test_edges_sorted_unique_for_any_scale(self, half_width, q_max):
        try:
            edges = composite_edges(half_width, q_max)
        except NumericalError:
            return
        assert np.all(np.diff(edges) > 0.0)
        assert edges.size - 1 <= MAX_PANELS


class TestFourierIntegral:
    def test_unit_profile_gives_sinc(self):
        half = 2.0e-9
        q = np.linspace(-2.0e9, 2.0e9, 101)
        edges = composite_edges(half, float(np.max(np.abs(q))))
        got = fourier_integral(lambda x: np.ones_like(x, dtype=np.complex128),
                               edges, q)
        want = 2.0 * half * np.sinc(q * half / np.pi)
        assert np.max(np.abs(got - want)) < 1e-22  # values are O(4e-9)

    def test_gaussian_profile_matches_closed_form(self):
        # wide window makes truncation negligible; the profile is far
        # narrower than any transmission function, so lay out panels by hand
        sigma = 0.2e-9
        half = 3.0e-9
        q = np.linspace(-1.0e9, 1.0e9, 64)
        edges = np.linspace(-half, half, 61)
        got = fourier_integral(
            lambda x: np.exp(-0.5 * (x / sigma) ** 2).astype(np.complex128),
            edges, q)
        want = sigma * np.sqrt(2.0 * np.pi) * np.exp(-0.5 * (sigma * q) ** 2)
        assert np.max(np.abs(got - want)) / np.max(np.abs(want)) < 1e-12

    def test_odd_profile_gives_odd_imaginary_transform(self):
        half = 2.0e-9
        q = np.linspace(-3.0e9, 3.0e9, 33)
        edges = composite_edges(half, float(np.max(np.abs(q))))
        got = fourier_integral(lambda x: (x / half).astype(np.complex128),
                               edges, q)
        assert np.max(np.abs(got.real)) < 1e-24
        assert np.allclose(got.imag, -got.imag[::-1], atol=1e-24)

    def test_disagreement_raises_and_names_the_point(self):
        # a step inside one panel defeats polynomial convergence
        half = 2.0e-9
        q = np.array([0.0, 1.0e9])
        edges = np.array([-half, half])
        step = lambda x: (x > 0.3e-9).astype(np.complex128)
        with pytest.raises(NumericalError, match="detector point"):
            fourier_integral(step, edges, q, grid_positions=np.array([0.0, 1.5e-5]))

    def test_zero_profile_passes_the_check(self):
        half = 2.0e-9
        q = np.linspace(-1.0e9, 1.0e9, 8)
        edges = composite_edges(half, 1.0e9)
        got = fourier_integral(lambda x: np.zeros_like(x, dtype=np.complex128),
                               edges, q)
        assert np.array_equal(got, np.zeros(8, dtype=np.complex128))
