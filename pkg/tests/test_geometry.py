import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mwlith import ConfigurationError, DetectorGrid, GeometryConfig, Mask
from mwlith.geometry import mask_to_openings, open_runs

from conftest import helium_geometry_kwargs


class TestGeometryConfig:
    def test_wavenumber_is_derived(self, helium_geometry):
        assert helium_geometry.wavenumber == 2.0 * np.pi / 1.0e-10

    def test_mask_extent(self, helium_geometry):
        assert helium_geometry.mask_extent == pytest.approx(200.0e-9)

    def test_fresnel_number_uses_half_extent(self, helium_geometry):
        # (100 nm)^2 / (0.1 nm * 300 um) = 1/3
        assert helium_geometry.fresnel_number == pytest.approx(1.0 / 3.0)

    def test_rejects_mask_beyond_far_field(self):
        # 100 sections * 4 nm = 400 nm extent: Fresnel number 4/3
        with pytest.raises(ConfigurationError, match="Fresnel"):
            GeometryConfig(**helium_geometry_kwargs(n_sections=100))

    @pytest.mark.parametrize(
        "field",
        ["wavelength", "source_distance", "screen_distance",
         "membrane_thickness", "particle_mass", "section_width", "amplitude"],
    )
    def test_rejects_non_positive(self, field):
        with pytest.raises(ConfigurationError):
            GeometryConfig(**helium_geometry_kwargs(**{field: 0.0}))

    def test_rejects_negative_c3_and_width_reduction(self):
        with pytest.raises(ConfigurationError):
            GeometryConfig(**helium_geometry_kwargs(c3_coefficient=-1e-50))
        with pytest.raises(ConfigurationError):
            GeometryConfig(**helium_geometry_kwargs(width_reduction=-1e-10))

    def test_zero_c3_allowed(self, ideal_geometry):
        assert ideal_geometry.c3_coefficient == 0.0


class TestDetectorGrid:
    def test_defaults(self, grid):
        assert grid.n_points == 512
        assert grid.r_max == 15.0e-6
        assert grid.positions.shape == (512,)

    def test_positions_exactly_antisymmetric(self):
        for n in (2, 3, 512, 513):
            g = DetectorGrid(r_max=15.0e-6, n_points=n)
            assert np.array_equal(g.positions, -g.positions[::-1])

    def test_spacing(self, grid):
        assert grid.spacing == pytest.approx(30.0e-6 / 511)
        assert np.allclose(np.diff(grid.positions), grid.spacing)

    def test_positions_read_only(self, grid):
        with pytest.raises(ValueError):
            grid.positions[0] = 0.0

    def test_same_as(self, grid):
        assert grid.same_as(DetectorGrid())
        assert not grid.same_as(DetectorGrid(n_points=256))
        assert not grid.same_as(DetectorGrid(r_max=10e-6))

    def test_validation(self):
        with pytest.raises(ConfigurationError):
            DetectorGrid(r_max=0.0)
        with pytest.raises(ConfigurationError):
            DetectorGrid(n_points=1)


class TestMask:
    def test_string_round_trip(self):
        text = "0101111101100000"
        assert Mask.from_string(text).to_string() == text

    def test_rejects_bad_characters(self):
        with pytest.raises(ConfigurationError):
            Mask.from_string("0102")
        with pytest.raises(ConfigurationError):
            Mask.from_string("")

    def test_rejects_non_binary_array(self):
        with pytest.raises(ConfigurationError):
            Mask(np.array([0, 1, 2], dtype=np.uint8))
        with pytest.raises(ConfigurationError):
            Mask(np.zeros((2, 2), dtype=np.uint8))

    def test_equality_and_hash(self):
        a = Mask.from_string("0110")
        b = Mask(np.array([0, 1, 1, 0]))
        assert a == b
        assert hash(a) == hash(b)
        assert a != Mask.from_string("0111")

    def test_sections_read_only(self):
        m = Mask.from_string("01")
        with pytest.raises(ValueError):
            m.sections[0] = 1


class TestOpenRuns:
    def test_worked_example(self):
        starts, lengths = open_runs(np.array([0, 1, 1, 0, 1, 0, 0, 1, 1, 1]))
        assert starts.tolist() == [1, 4, 7]
        assert lengths.tolist() == [2, 1, 3]

    def test_all_blocked(self):
        starts, lengths = open_runs(np.zeros(5, dtype=np.uint8))
        assert starts.size == 0 and lengths.size == 0

    def test_all_open(self):
        starts, lengths = open_runs(np.ones(5, dtype=np.uint8))
        assert starts.tolist() == [0] and lengths.tolist() == [5]

    @given(st.lists(st.integers(0, 1), min_size=1, max_size=64))
    def test_runs_reconstruct_the_mask(self, bits):
        sections = np.array(bits, dtype=np.uint8)
        starts, lengths = open_runs(sections)
        rebuilt = np.zeros_like(sections)
        for s, length in zip(starts, lengths):
            rebuilt[s:s + length] = 1
        assert np.array_equal(rebuilt, sections)
        # runs are maximal: separated by at least one blocked section
        for (s1, l1), s2 in zip(zip(starts, lengths), starts[1:]):
            assert s1 + l1 < s2


class TestMaskToOpenings:
    def test_worked_example(self, helium_geometry):
        # sections 18-20 and 28-30 open (12 nm slits, 28 nm blocked between)
        mask = Mask.from_string("0" * 18 + "111" + "0" * 7 + "111" + "0" * 19)
        openings = mask_to_openings(mask, helium_geometry)
        assert len(openings) == 2
        # center of sections 18..20: left edge at (18-25)*4 nm = -28 nm,
        # so center -28 + 6 = -22 nm; second run starts at (28-25)*4 = 12 nm
        assert openings[0].center == pytest.approx(-22.0e-9)
        assert openings[0].width == pytest.approx(12.0e-9)
        assert openings[1].center == pytest.approx(18.0e-9)
        assert openings[1].width == pytest.approx(12.0e-9)

    def test_leftmost_section(self, helium_geometry):
        mask = Mask.from_string("1" + "0" * 49)
        opening, = mask_to_openings(mask, helium_geometry)
        # first section spans [-100, -96] nm
        assert opening.center == pytest.approx(-98.0e-9)
        assert opening.width == pytest.approx(4.0e-9)

    def test_full_mask_is_centered(self, helium_geometry):
        mask = Mask(np.ones(50, dtype=np.uint8))
        opening, = mask_to_openings(mask, helium_geometry)
        assert opening.center == 0.0
        assert opening.width == pytest.approx(200.0e-9)

    def test_length_mismatch(self, helium_geometry):
        with pytest.raises(ConfigurationError):
            mask_to_openings(Mask.from_string("01"), helium_geometry)

    @settings(deadline=None)
    @given(st.lists(st.integers(0, 1), min_size=16, max_size=16))
    def test_openings_tile_back_to_mask(self, small_geometry, bits):
        mask = Mask(np.array(bits, dtype=np.uint8))
        openings = mask_to_openings(mask, small_geometry)
        w = small_geometry.section_width
        half_extent = 0.5 * small_geometry.mask_extent
        rebuilt = np.zeros(16, dtype=np.uint8)
        for o in openings:
            left = o.center - 0.5 * o.width + half_extent
            start = int(round(left / w))
            count = int(round(o.width / w))
            rebuilt[start:start + count] = 1
        assert np.array_equal(rebuilt, mask.sections)
