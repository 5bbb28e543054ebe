from pathlib import Path

import pytest

from mwlith import ConfigurationError
from mwlith.config import (
    load_run_config,
    parse_assignments,
    run_config_from_text,
)

REQUIRED_BLOCK = """
wavelength = 1.0e-10
source_distance = 1.0
screen_distance = 300e-6
membrane_thickness = 5e-9
c3_coefficient = 1.0e-49
particle_mass = 6.6464731e-27
"""

SAMPLE_CONFIG = Path(__file__).resolve().parents[1] / "configs" / "helium_beamline.cfg"


class TestParseAssignments:
    def test_comments_blanks_and_spacing(self):
        text = """
        # leading comment
        alpha = 1.5   # trailing comment
        beta=x=y

        gamma =
        """
        values = parse_assignments(text)
        assert values == {"alpha": "1.5", "beta": "x=y", "gamma": ""}

    def test_duplicate_keys_rejected_with_line_number(self):
        with pytest.raises(ConfigurationError, match="line 3"):
            parse_assignments("a = 1\nb = 2\na = 3\n")

    def test_missing_equals_rejected(self):
        with pytest.raises(ConfigurationError, match="line 2"):
            parse_assignments("a = 1\njust words\n")

    def test_empty_key_rejected(self):
        with pytest.raises(ConfigurationError, match="empty key"):
            parse_assignments("= 5\n")


class TestRunConfigFromText:
    def test_defaults_fill_in(self):
        config = run_config_from_text(REQUIRED_BLOCK)
        assert config.geometry.n_sections == 50
        assert config.geometry.width_reduction == 1e-9
        assert config.grid.n_points == 512
        assert config.grid.r_max == 15e-6
        assert config.mode == "matter"
        assert config.ga.generations == 200
        assert config.ga.population_size == 50
        assert config.ga.n_parents == 7
        assert config.ga.elitism is True
        assert config.ga.seed_mutations == 15
        assert config.ga.offspring_mutations == 12
        assert config.ga.fitness_threshold is None
        assert config.dataset_count == 1000
        assert config.dataset_features is False
        assert config.bench_targets == 20
        assert config.bench_repeats == 10

    def test_overrides_apply(self):
        text = REQUIRED_BLOCK + (
            "n_sections = 16\nmode = em\ngenerations = 77\n"
            "elitism = off\nfitness_threshold = 5e8\n"
            "dataset_features = yes\nn_points = 256\n"
        )
        config = run_config_from_text(text)
        assert config.geometry.n_sections == 16
        assert config.mode == "em"
        assert config.ga.generations == 77
        assert config.ga.elitism is False
        assert config.ga.fitness_threshold == 5e8
        assert config.dataset_features is True
        assert config.grid.n_points == 256

    def test_fitness_threshold_none_spelling(self):
        config = run_config_from_text(REQUIRED_BLOCK + "fitness_threshold = none\n")
        assert config.ga.fitness_threshold is None

    def test_unknown_keys_listed(self):
        with pytest.raises(ConfigurationError, match="slit_count.*zmode"):
            run_config_from_text(REQUIRED_BLOCK + "zmode = 1\nslit_count = 5\n")

    def test_missing_required_keys_listed(self):
        with pytest.raises(ConfigurationError,
                           match="missing required.*particle_mass"):
            run_config_from_text("wavelength = 1e-10\n")

    def test_bad_number_names_the_key(self):
        with pytest.raises(ConfigurationError, match="wavelength"):
            run_config_from_text(REQUIRED_BLOCK.replace("1.0e-10", "tiny"))

    def test_bad_bool_rejected(self):
        with pytest.raises(ConfigurationError, match="boolean"):
            run_config_from_text(REQUIRED_BLOCK + "elitism = maybe\n")

    def test_bad_mode_rejected(self):
        with pytest.raises(ConfigurationError, match="mode"):
            run_config_from_text(REQUIRED_BLOCK + "mode = light\n")

    def test_geometry_validation_applies(self):
        # 100 sections of 4 nm leave the far-field regime on this beamline
        with pytest.raises(ConfigurationError, match="Fresnel"):
            run_config_from_text(REQUIRED_BLOCK + "n_sections = 100\n")

    def test_counts_must_be_positive(self):
        with pytest.raises(ConfigurationError, match="dataset_count"):
            run_config_from_text(REQUIRED_BLOCK + "dataset_count = 0\n")
        with pytest.raises(ConfigurationError, match="bench_repeats"):
            run_config_from_text(REQUIRED_BLOCK + "bench_repeats = 0\n")


class TestSampleFile:
    def test_sample_config_parses(self):
        config = load_run_config(SAMPLE_CONFIG)
        assert config.geometry.wavelength == 1.0e-10
        assert config.geometry.n_sections == 50
        assert config.geometry.fresnel_number < 1.0
        assert config.mode == "matter"
