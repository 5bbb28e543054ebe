"""Flat key=value run configuration.

One assignment per line, ``#`` starts a comment, blank lines ignored.
Values are parsed by the declared type of the key; unknown keys and
repeated keys are rejected so typos fail loudly instead of silently
falling back to defaults.

Required keys (no physically meaningful default exists for them):

    wavelength            de Broglie wavelength of the beam [m]
    source_distance       source to mask [m]
    screen_distance       mask to detector [m]
    membrane_thickness    mask membrane thickness [m]
    c3_coefficient        wall dispersion coefficient [J m^3], 0 disables
    particle_mass         beam particle mass [kg]

Optional keys and their defaults:

    width_reduction   1e-9   effective narrowing of each slit edge [m]
    section_width     4e-9   width of one mask section [m]
    n_sections        50     sections per mask
    amplitude         1.0    incident amplitude scale
    r_max             15e-6  detector half extent [m]
    n_points          512    detector samples
    mode              matter matter | em
    generations       200    search budget
    population_size   50
    n_parents         7
    elitism           true
    seed_mutations    15     genes resampled when spreading a seed mask
    offspring_mutations 12   genes resampled per offspring
    fitness_alpha     1e-9   fitness regularizer
    fitness_threshold none   early-stop fitness, none disables
    rng_seed          0
    dataset_count     1000   records for dataset generation
    dataset_features  false  store spectra alongside patterns
    bench_targets     20     benchmark target count
    bench_repeats     10     benchmark repeats per target
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import ConfigurationError
from .fields import check_mode
from .ga import GaConfig
from .geometry import DetectorGrid, GeometryConfig


def _parse_bool(raw: str) -> bool:
    lowered = raw.lower()
    if lowered in ("true", "yes", "1", "on"):
        return True
    if lowered in ("false", "no", "0", "off"):
        return False
    raise ConfigurationError(f"expected a boolean, got {raw!r}")


def _parse_optional_float(raw: str) -> float | None:
    if raw.lower() in ("none", ""):
        return None
    return float(raw)


_REQUIRED = {
    "wavelength": float,
    "source_distance": float,
    "screen_distance": float,
    "membrane_thickness": float,
    "c3_coefficient": float,
    "particle_mass": float,
}

_OPTIONAL = {
    "width_reduction": (float, 1e-9),
    "section_width": (float, 4e-9),
    "n_sections": (int, 50),
    "amplitude": (float, 1.0),
    "r_max": (float, 15e-6),
    "n_points": (int, 512),
    "mode": (str, "matter"),
    "generations": (int, 200),
    "population_size": (int, 50),
    "n_parents": (int, 7),
    "elitism": (_parse_bool, True),
    "seed_mutations": (int, 15),
    "offspring_mutations": (int, 12),
    "fitness_alpha": (float, 1e-9),
    "fitness_threshold": (_parse_optional_float, None),
    "rng_seed": (int, 0),
    "dataset_count": (int, 1000),
    "dataset_features": (_parse_bool, False),
    "bench_targets": (int, 20),
    "bench_repeats": (int, 10),
}


@dataclass(frozen=True)
class RunConfig:
    """Validated bundle of everything a command-line run needs."""

    geometry: GeometryConfig
    grid: DetectorGrid
    mode: str
    ga: GaConfig
    dataset_count: int
    dataset_features: bool
    bench_targets: int
    bench_repeats: int


def parse_assignments(text: str) -> dict[str, str]:
    """Raw key to raw value, with comments stripped and duplicates rejected."""
    values: dict[str, str] = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.split("#", 1)[0].strip()
        if not stripped:
            continue
        if "=" not in stripped:
            raise ConfigurationError(
                f"line {lineno}: expected key=value, got {line.strip()!r}"
            )
        key, raw = stripped.split("=", 1)
        key = key.strip()
        raw = raw.strip()
        if not key:
            raise ConfigurationError(f"line {lineno}: empty key")
        if key in values:
            raise ConfigurationError(f"line {lineno}: duplicate key {key!r}")
        values[key] = raw
    return values


def run_config_from_text(text: str) -> RunConfig:
    raw = parse_assignments(text)
    unknown = sorted(set(raw) - set(_REQUIRED) - set(_OPTIONAL))
    if unknown:
        raise ConfigurationError(f"unknown config keys: {', '.join(unknown)}")
    missing = sorted(set(_REQUIRED) - set(raw))
    if missing:
        raise ConfigurationError(f"missing required config keys: {', '.join(missing)}")

    parsed: dict[str, object] = {}
    for key, value in raw.items():
        convert = _REQUIRED.get(key) or _OPTIONAL[key][0]
        try:
            parsed[key] = convert(value)
        except ConfigurationError:
            raise
        except ValueError as exc:
            raise ConfigurationError(f"config key {key}: {exc}") from exc
    for key, (_, default) in _OPTIONAL.items():
        parsed.setdefault(key, default)

    check_mode(str(parsed["mode"]))
    geometry = GeometryConfig(
        wavelength=parsed["wavelength"],
        source_distance=parsed["source_distance"],
        screen_distance=parsed["screen_distance"],
        membrane_thickness=parsed["membrane_thickness"],
        c3_coefficient=parsed["c3_coefficient"],
        particle_mass=parsed["particle_mass"],
        width_reduction=parsed["width_reduction"],
        section_width=parsed["section_width"],
        n_sections=parsed["n_sections"],
        amplitude=parsed["amplitude"],
    )
    grid = DetectorGrid(r_max=parsed["r_max"], n_points=parsed["n_points"])
    ga = GaConfig(
        generations=parsed["generations"],
        population_size=parsed["population_size"],
        n_parents=parsed["n_parents"],
        elitism=parsed["elitism"],
        seed_mutations=parsed["seed_mutations"],
        offspring_mutations=parsed["offspring_mutations"],
        fitness_alpha=parsed["fitness_alpha"],
        fitness_threshold=parsed["fitness_threshold"],
        rng_seed=parsed["rng_seed"],
    )
    for key in ("dataset_count", "bench_targets", "bench_repeats"):
        if parsed[key] < 1:
            raise ConfigurationError(f"{key} must be at least 1")
    return RunConfig(
        geometry=geometry,
        grid=grid,
        mode=str(parsed["mode"]),
        ga=ga,
        dataset_count=parsed["dataset_count"],
        dataset_features=parsed["dataset_features"],
        bench_targets=parsed["bench_targets"],
        bench_repeats=parsed["bench_repeats"],
    )


def load_run_config(path: str) -> RunConfig:
    with open(path, "r", encoding="utf-8") as handle:
        return run_config_from_text(handle.read())
