"""Shared geometries, grids and slit tables.

Table builds are the expensive part of the suite, so they are session
fixtures; everything downstream treats them as read-only.
"""

import numpy as np
import pytest

from mwlith import DetectorGrid, GeometryConfig, build_table

HE4_MASS = 6.6464731e-27
SAMPLE_C3 = 1.0e-49

# SHA-256 over the record bytes of a 3-record, seed-2024, 16-section matter
# corpus on the default grid; pins generator, forward model and layout at once.
FROZEN_CORPUS_CHECKSUM = (
    "42b4b64d69ba4a82d3ccbeb10eda39881e810806f0c593692162272a88a1cad4"
)


def helium_geometry_kwargs(**overrides):
    kwargs = dict(
        wavelength=1.0e-10,
        source_distance=1.0,
        screen_distance=300.0e-6,
        membrane_thickness=5.0e-9,
        c3_coefficient=SAMPLE_C3,
        particle_mass=HE4_MASS,
    )
    kwargs.update(overrides)
    return kwargs


@pytest.fixture(scope="session")
def helium_geometry():
    """50-section beamline with dispersion on."""
    return GeometryConfig(**helium_geometry_kwargs())


@pytest.fixture(scope="session")
def ideal_geometry():
    """Same beamline with dispersion and narrowing off: matter mode must
    collapse onto the EM closed form here."""
    return GeometryConfig(
        **helium_geometry_kwargs(c3_coefficient=0.0, width_reduction=0.0)
    )


@pytest.fixture(scope="session")
def small_geometry():
    """16-section variant, small enough to enumerate all masks."""
    return GeometryConfig(**helium_geometry_kwargs(n_sections=16))


@pytest.fixture(scope="session")
def grid():
    return DetectorGrid()


@pytest.fixture(scope="session")
def matter_table(helium_geometry, grid):
    return build_table(helium_geometry, grid, "matter")


@pytest.fixture(scope="session")
def em_table(helium_geometry, grid):
    return build_table(helium_geometry, grid, "em")


@pytest.fixture(scope="session")
def small_matter_table(small_geometry, grid):
    return build_table(small_geometry, grid, "matter")


@pytest.fixture()
def rng():
    return np.random.default_rng(20240811)
