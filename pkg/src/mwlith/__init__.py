"""Matter-wave lithography with binary masks.

Simulates far-field patterns of sectioned binary masks (an electromagnetic
reference model and a matter-wave model with atom-surface dispersion),
searches for the mask matching a target pattern with a genetic algorithm,
generates datasets for learned seeding, and benchmarks seeded against
random initialization.
"""

from .bench import (
    BenchArm,
    BenchResult,
    bench_targets,
    compare_seeding,
    percent_difference,
    run_arm,
)
from .config import RunConfig, load_run_config, run_config_from_text
from .dataset import (
    DatasetHeader,
    DatasetSummary,
    compute_fft_features,
    export_jsonl,
    generate_dataset,
    generate_dataset_file,
    load_dataset,
    nonzero_random_mask,
    random_mask,
    split_indices,
    verify_records,
)
from .dispersion import dispersion_phase, matter_transmission
from .errors import (
    BadMagicError,
    BadVersionError,
    ConfigurationError,
    DataFormatError,
    FingerprintMismatchError,
    MwlithError,
    NumericalError,
    PartialWriteError,
    TruncatedFileError,
)
from .fields import (
    IntensityPattern,
    WaveField,
    forward,
    forward_field,
    peak_normalize,
    single_slit_field_em,
    single_slit_field_mw,
    slit_field,
)
from .ga import (
    GaConfig,
    GaRun,
    PatternEvaluator,
    brute_force_best,
    evolve,
    random_population,
    seed_population,
    uniform_crossover,
)
from .geometry import (
    DetectorGrid,
    GeometryConfig,
    Mask,
    SlitOpening,
    mask_to_openings,
)
from .objective import FITNESS_ALPHA, error_mse, fitness
from .spectrum import (
    em_pattern_spectrum,
    kink_frequencies,
    pair_shifts,
    support_bound,
)
from .table import SlitTable, build_table, geometry_fingerprint, load_table, save_table

__version__ = "0.1.0"

__all__ = [
    "BadMagicError",
    "BadVersionError",
    "BenchArm",
    "BenchResult",
    "ConfigurationError",
    "DataFormatError",
    "DatasetHeader",
    "DatasetSummary",
    "DetectorGrid",
    "FITNESS_ALPHA",
    "FingerprintMismatchError",
    "GaConfig",
    "GaRun",
    "GeometryConfig",
    "IntensityPattern",
    "Mask",
    "MwlithError",
    "NumericalError",
    "PartialWriteError",
    "PatternEvaluator",
    "RunConfig",
    "SlitOpening",
    "SlitTable",
    "TruncatedFileError",
    "WaveField",
    "bench_targets",
    "brute_force_best",
    "build_table",
    "compare_seeding",
    "compute_fft_features",
    "dispersion_phase",
    "em_pattern_spectrum",
    "error_mse",
    "evolve",
    "export_jsonl",
    "fitness",
    "forward",
    "forward_field",
    "generate_dataset",
    "generate_dataset_file",
    "geometry_fingerprint",
    "kink_frequencies",
    "load_dataset",
    "load_run_config",
    "load_table",
    "mask_to_openings",
    "matter_transmission",
    "nonzero_random_mask",
    "pair_shifts",
    "peak_normalize",
    "percent_difference",
    "random_mask",
    "random_population",
    "run_arm",
    "run_config_from_text",
    "save_table",
    "seed_population",
    "single_slit_field_em",
    "single_slit_field_mw",
    "slit_field",
    "split_indices",
    "support_bound",
    "uniform_crossover",
    "verify_records",
]
