"""Paired benchmark: seeded versus random search initialization.

Both arms solve the same targets with the same per-run random streams; they
differ only in how the initial population is built. Run ``r`` on target
``t`` always draws its generator from the entropy triple (seed, t, r), so
two arms given identical seed masks produce bitwise identical runs and the
paired percent difference collapses to exactly zero. Any nonzero difference
is attributable to the initialization alone.

Runs always use the full generation budget (no early stop) so fitness
traces align across repeats and arms.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from math import sqrt

import numpy as np

from .dataset import nonzero_random_mask
from .errors import ConfigurationError
from .fields import IntensityPattern, forward
from .ga import GaConfig, PatternEvaluator, evolve, random_population, seed_population
from .geometry import Mask
from .table import SlitTable


def bench_targets(
    table: SlitTable, seed: int, count: int
) -> list[tuple[Mask, IntensityPattern]]:
    """Reproducible nonzero target masks with their patterns.

    Target ``t`` comes from the stream seeded by (seed, t); the mask list
    therefore does not depend on ``count`` prefix-wise, and reruns with the
    same seed regenerate identical targets.
    """
    if count < 1:
        raise ConfigurationError("bench needs at least one target")
    out = []
    for t in range(count):
        rng = np.random.default_rng([seed, t])
        mask = Mask(nonzero_random_mask(rng, table.geometry.n_sections))
        pattern = forward(mask, table.geometry, table.grid, table.mode, table=table)
        out.append((mask, pattern))
    return out


@dataclass(frozen=True)
class BenchArm:
    """One initialization strategy run over all targets and repeats."""

    name: str
    final_best: np.ndarray  # (n_targets, n_repeats)
    best_traces: np.ndarray  # (n_targets, n_repeats, generations + 1)


@dataclass(frozen=True)
class BenchResult:
    baseline: BenchArm
    seeded: BenchArm
    pct_final: np.ndarray  # paired percent difference at the last generation
    pct_curve: np.ndarray  # mean paired percent difference per generation

    @property
    def mean_pct(self) -> float:
        return float(self.pct_final.mean())

    @property
    def stderr_pct(self) -> float:
        flat = self.pct_final.ravel()
        if flat.size < 2:
            return 0.0
        return float(flat.std(ddof=1) / sqrt(flat.size))

    @property
    def significant(self) -> bool:
        """Mean advantage exceeds four standard errors."""
        return self.mean_pct > 4.0 * self.stderr_pct


def run_arm(
    name: str,
    targets: list[tuple[Mask, IntensityPattern]],
    seed_masks: list[Mask] | None,
    config: GaConfig,
    table: SlitTable,
    seed: int,
    n_repeats: int,
) -> BenchArm:
    """All repeats of one arm. ``seed_masks`` of None means random init."""
    if n_repeats < 1:
        raise ConfigurationError("bench needs at least one repeat")
    if seed_masks is not None and len(seed_masks) != len(targets):
        raise ConfigurationError(
            f"got {len(seed_masks)} seed masks for {len(targets)} targets"
        )
    run_config = replace(config, fitness_threshold=None)
    n_sections = table.geometry.n_sections
    final_best = np.empty((len(targets), n_repeats), dtype=np.float64)
    best_traces = np.empty(
        (len(targets), n_repeats, run_config.generations + 1), dtype=np.float64
    )
    for t, (_, pattern) in enumerate(targets):
        for r in range(n_repeats):
            rng = np.random.default_rng([seed, t, r])
            if seed_masks is None:
                population = random_population(n_sections, run_config, rng)
            else:
                population = seed_population(seed_masks[t], run_config, rng)
            evaluator = PatternEvaluator(pattern, table, run_config.fitness_alpha)
            run = evolve(
                pattern,
                population,
                run_config,
                table,
                rng=rng,
                evaluator=evaluator,
            )
            final_best[t, r] = run.best
            best_traces[t, r] = run.best_fitness
    return BenchArm(name=name, final_best=final_best, best_traces=best_traces)


def percent_difference(baseline: BenchArm, other: BenchArm) -> np.ndarray:
    """Paired percent fitness difference, per target and repeat."""
    return 100.0 * (other.final_best - baseline.final_best) / baseline.final_best


def compare_seeding(
    targets: list[tuple[Mask, IntensityPattern]],
    seed_masks: list[Mask],
    config: GaConfig,
    table: SlitTable,
    seed: int,
    n_repeats: int,
) -> BenchResult:
    """Seeded arm against the random-initialization baseline."""
    baseline = run_arm("random", targets, None, config, table, seed, n_repeats)
    seeded = run_arm("seeded", targets, seed_masks, config, table, seed, n_repeats)
    pct_final = percent_difference(baseline, seeded)
    curve = 100.0 * (seeded.best_traces - baseline.best_traces) / baseline.best_traces
    pct_curve = curve.mean(axis=(0, 1))
    return BenchResult(
        baseline=baseline, seeded=seeded, pct_final=pct_final, pct_curve=pct_curve
    )
