"""Command line front end.

Subcommands::

    mwlith table    --config CFG --out FILE [--mode M]
    mwlith dataset  --config CFG --out FILE [--seed N] [--count N]
                    [--features] [--jsonl FILE]
    mwlith forward  --config CFG (--mask STR | --mask-file F) --out-dir DIR
                    [--mode M] [--table FILE]
    mwlith solve    --config CFG (--target-mask STR | --target-file F)
                    --out-dir DIR [--seed N] [--generations N]
                    [--threshold X] [--mode M] [--seed-mask STR] [--table FILE]
    mwlith bench    --config CFG --out-dir DIR [--seed N] [--generations N]
                    [--seed-masks FILE] [--mode M] [--table FILE]

Every command is deterministic: rerunning with identical arguments and
config produces byte-identical output files (plots included; figures are
rendered offscreen with embedded metadata suppressed).

``bench`` first writes the target set to ``bench_targets.jsonl``; with
``--generations 0`` it stops there, which lets an external tool read the
targets, predict seed masks for them and rerun the benchmark with
``--seed-masks`` against the same targets. Without ``--seed-masks`` the
seeded arm uses the masks that generated the targets.

Exit codes: 0 success, 2 configuration problems, 3 numerical failures,
4 file format or I/O problems.
"""

from __future__ import annotations

import argparse
import os
import sys
from dataclasses import replace

import numpy as np

from . import textio
from .bench import bench_targets, compare_seeding
from .config import RunConfig, load_run_config
from .dataset import export_jsonl, generate_dataset_file, load_dataset
from .errors import (
    EXIT_CONFIGURATION,
    EXIT_IO,
    EXIT_NUMERICAL,
    EXIT_OK,
    ConfigurationError,
    DataFormatError,
    NumericalError,
)
from .fields import IntensityPattern, check_mode, forward
from .ga import evolve, random_population, seed_population
from .geometry import Mask
from .table import SlitTable, build_table, load_table, save_table

_FMT = "%.17g"


def _pyplot():
    import matplotlib

    matplotlib.use("Agg", force=True)
    import matplotlib.pyplot as plt

    return plt


def _save_figure(fig, path: str) -> None:
    # A fixed dpi and no Software chunk keep the PNG bytes reproducible.
    fig.savefig(path, dpi=150, metadata={"Software": None})


def _plot_patterns(
    path: str, patterns: list[tuple[str, IntensityPattern]], title: str
) -> None:
    plt = _pyplot()
    fig, ax = plt.subplots(figsize=(8.0, 4.5))
    for label, pattern in patterns:
        ax.plot(pattern.grid.positions * 1e6, pattern.values, label=label, lw=1.0)
    ax.set_xlabel("detector position (um)")
    ax.set_ylabel("intensity (peak = 1)")
    ax.set_title(title)
    if len(patterns) > 1:
        ax.legend()
    fig.tight_layout()
    _save_figure(fig, path)
    plt.close(fig)


def _plot_trace(path: str, best: np.ndarray, mean: np.ndarray) -> None:
    plt = _pyplot()
    fig, ax = plt.subplots(figsize=(8.0, 4.5))
    generations = np.arange(best.size)
    ax.semilogy(generations, best, label="best", lw=1.2)
    ax.semilogy(generations, mean, label="population mean", lw=1.0)
    ax.set_xlabel("generation")
    ax.set_ylabel("fitness")
    ax.set_title("search convergence")
    ax.legend()
    fig.tight_layout()
    _save_figure(fig, path)
    plt.close(fig)


def _plot_bench(path: str, pct_curve: np.ndarray) -> None:
    plt = _pyplot()
    fig, ax = plt.subplots(figsize=(8.0, 4.5))
    ax.plot(np.arange(pct_curve.size), pct_curve, lw=1.2)
    ax.axhline(0.0, color="gray", lw=0.8)
    ax.set_xlabel("generation")
    ax.set_ylabel("mean paired fitness difference (%)")
    ax.set_title("seeded vs random initialization")
    fig.tight_layout()
    _save_figure(fig, path)
    plt.close(fig)


def _load_config(args) -> RunConfig:
    cfg = load_run_config(args.config)
    mode = getattr(args, "mode", None)
    if mode is not None:
        cfg = replace(cfg, mode=check_mode(mode))
    ga = cfg.ga
    if getattr(args, "seed", None) is not None:
        ga = replace(ga, rng_seed=args.seed)
    if getattr(args, "generations", None) is not None:
        ga = replace(ga, generations=args.generations)
    if getattr(args, "threshold", None) is not None:
        ga = replace(ga, fitness_threshold=args.threshold)
    return replace(cfg, ga=ga)


def _get_table(args, cfg: RunConfig) -> SlitTable:
    path = getattr(args, "table", None)
    if path is not None:
        table = load_table(path)
        table.check_compatible(cfg.geometry, cfg.grid, cfg.mode)
        return table
    return build_table(cfg.geometry, cfg.grid, cfg.mode)


def _read_mask_arg(text: str | None, path: str | None, n_sections: int) -> Mask:
    if text is not None:
        mask = Mask.from_string(text)
    else:
        with open(path, "r", encoding="utf-8") as handle:
            masks = textio.read_mask_lines(handle, n_sections)
        if len(masks) != 1:
            raise DataFormatError(
                f"expected exactly one mask in {path}, found {len(masks)}"
            )
        mask = masks[0]
    if mask.n_sections != n_sections:
        raise ConfigurationError(
            f"mask has {mask.n_sections} sections, config expects {n_sections}"
        )
    if int(mask.sections.sum()) == 0:
        raise ConfigurationError("mask has no open sections")
    return mask


def _cmd_table(args) -> int:
    cfg = _load_config(args)
    table = build_table(cfg.geometry, cfg.grid, cfg.mode)
    save_table(table, args.out)
    print(f"wrote {args.out} ({cfg.mode}, {cfg.geometry.n_sections} widths, "
          f"fingerprint {table.fingerprint.hex()})")
    return EXIT_OK


def _cmd_dataset(args) -> int:
    cfg = _load_config(args)
    count = args.count if args.count is not None else cfg.dataset_count
    seed = args.seed if args.seed is not None else cfg.ga.rng_seed
    with_features = args.features or cfg.dataset_features
    table = _get_table(args, cfg)
    summary = generate_dataset_file(
        count, cfg.geometry, cfg.grid, cfg.mode, seed, args.out,
        with_features=with_features, table=table,
    )
    print(f"wrote {args.out} ({summary.records_written} records, "
          f"checksum {summary.checksum})")
    if args.jsonl is not None:
        _, masks, patterns, _ = load_dataset(args.out)
        with open(args.jsonl, "w", encoding="utf-8", newline="\n") as handle:
            n = export_jsonl(masks, patterns, handle)
        print(f"wrote {args.jsonl} ({n} records)")
    return EXIT_OK


def _cmd_forward(args) -> int:
    cfg = _load_config(args)
    mask = _read_mask_arg(args.mask, args.mask_file, cfg.geometry.n_sections)
    table = _get_table(args, cfg)
    pattern = forward(mask, cfg.geometry, cfg.grid, cfg.mode, table=table)
    os.makedirs(args.out_dir, exist_ok=True)
    pattern_path = os.path.join(args.out_dir, "pattern.txt")
    with open(pattern_path, "w", encoding="utf-8", newline="\n") as handle:
        textio.write_pattern_text(handle, pattern)
    _plot_patterns(
        os.path.join(args.out_dir, "pattern.png"),
        [("pattern", pattern)],
        f"{cfg.mode} pattern of {mask.to_string()}",
    )
    print(f"wrote {pattern_path}")
    return EXIT_OK


def _cmd_solve(args) -> int:
    cfg = _load_config(args)
    table = _get_table(args, cfg)
    if args.target_mask is not None:
        target_mask = _read_mask_arg(args.target_mask, None, cfg.geometry.n_sections)
        target = forward(target_mask, cfg.geometry, cfg.grid, cfg.mode, table=table)
    else:
        with open(args.target_file, "r", encoding="utf-8") as handle:
            target = textio.read_pattern_text(handle)
        if not target.grid.same_as(cfg.grid):
            raise ConfigurationError(
                "target pattern grid does not match the configured grid"
            )
        if target.normalization != "peak-one":
            raise ConfigurationError("target pattern must be peak-one normalized")
        target = IntensityPattern(
            grid=cfg.grid, values=target.values, normalization="peak-one"
        )

    rng = np.random.default_rng(cfg.ga.rng_seed)
    if args.seed_mask is not None:
        seed_mask = _read_mask_arg(args.seed_mask, None, cfg.geometry.n_sections)
        population = seed_population(seed_mask, cfg.ga, rng)
    else:
        population = random_population(cfg.geometry.n_sections, cfg.ga, rng)
    run = evolve(target, population, cfg.ga, table, rng=rng)

    os.makedirs(args.out_dir, exist_ok=True)
    best_pattern = forward(run.best_mask, cfg.geometry, cfg.grid, cfg.mode, table=table)
    with open(os.path.join(args.out_dir, "best_mask.txt"), "w",
              encoding="utf-8", newline="\n") as handle:
        textio.write_mask_lines(handle, [run.best_mask])
    with open(os.path.join(args.out_dir, "trace.txt"), "w",
              encoding="utf-8", newline="\n") as handle:
        textio.write_trace_text(handle, run.best_fitness, run.mean_fitness)
    with open(os.path.join(args.out_dir, "best_pattern.txt"), "w",
              encoding="utf-8", newline="\n") as handle:
        textio.write_pattern_text(handle, best_pattern)
    with open(os.path.join(args.out_dir, "target_pattern.txt"), "w",
              encoding="utf-8", newline="\n") as handle:
        textio.write_pattern_text(handle, target)
    _plot_trace(
        os.path.join(args.out_dir, "convergence.png"),
        run.best_fitness, run.mean_fitness,
    )
    _plot_patterns(
        os.path.join(args.out_dir, "comparison.png"),
        [("target", target), ("best found", best_pattern)],
        "target vs. best found pattern",
    )
    print(f"best mask {run.best_mask.to_string()}")
    print(f"best fitness {_FMT % run.best} after {run.generations_run} generations")
    return EXIT_OK


def _cmd_bench(args) -> int:
    cfg = _load_config(args)
    table = _get_table(args, cfg)
    seed = args.seed if args.seed is not None else cfg.ga.rng_seed
    targets = bench_targets(table, seed, cfg.bench_targets)
    os.makedirs(args.out_dir, exist_ok=True)
    targets_path = os.path.join(args.out_dir, "bench_targets.jsonl")
    with open(targets_path, "w", encoding="utf-8", newline="\n") as handle:
        textio.write_targets_jsonl(handle, targets)
    print(f"wrote {targets_path} ({len(targets)} targets)")
    if cfg.ga.generations == 0:
        print("generations is 0: target emission only, no benchmark arms run")
        return EXIT_OK

    if args.seed_masks is not None:
        with open(args.seed_masks, "r", encoding="utf-8") as handle:
            seed_masks = textio.read_mask_lines(handle, cfg.geometry.n_sections)
        if len(seed_masks) != len(targets):
            raise DataFormatError(
                f"{args.seed_masks} holds {len(seed_masks)} masks for "
                f"{len(targets)} targets"
            )
    else:
        seed_masks = [mask for mask, _ in targets]

    result = compare_seeding(
        targets, seed_masks, cfg.ga, table, seed, cfg.bench_repeats
    )

    stats_path = os.path.join(args.out_dir, "bench_stats.txt")
    with open(stats_path, "w", encoding="utf-8", newline="\n") as handle:
        handle.write("# paired percent fitness difference, seeded vs random\n")
        handle.write(f"targets {len(targets)}\n")
        handle.write(f"repeats {cfg.bench_repeats}\n")
        handle.write(f"generations {cfg.ga.generations}\n")
        handle.write(f"mean_pct {_FMT % result.mean_pct}\n")
        handle.write(f"stderr_pct {_FMT % result.stderr_pct}\n")
        handle.write(f"significant {'true' if result.significant else 'false'}\n")
        for t in range(len(targets)):
            handle.write(
                f"target_mean_pct {t} {_FMT % result.pct_final[t].mean()}\n"
            )
    curve_path = os.path.join(args.out_dir, "bench_curve.txt")
    with open(curve_path, "w", encoding="utf-8", newline="\n") as handle:
        handle.write("# columns: generation mean_pct_diff mean_random_best "
                     "mean_seeded_best\n")
        base_curve = result.baseline.best_traces.mean(axis=(0, 1))
        seed_curve = result.seeded.best_traces.mean(axis=(0, 1))
        for g in range(result.pct_curve.size):
            handle.write(
                f"{g} {_FMT % result.pct_curve[g]} "
                f"{_FMT % base_curve[g]} {_FMT % seed_curve[g]}\n"
            )
    _plot_bench(os.path.join(args.out_dir, "bench.png"), result.pct_curve)
    print(f"mean paired difference {_FMT % result.mean_pct} % "
          f"(stderr {_FMT % result.stderr_pct}, "
          f"{'significant' if result.significant else 'not significant'})")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mwlith",
        description="Binary-mask lithography patterns: simulate, search, benchmark.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, out_dir: bool):
        p.add_argument("--config", required=True, help="key=value config file")
        p.add_argument("--mode", choices=("matter", "em"),
                       help="override the configured propagation mode")
        if out_dir:
            p.add_argument("--out-dir", required=True,
                           help="directory for output files")

    p = sub.add_parser("table", help="precompute and save a slit field table")
    add_common(p, out_dir=False)
    p.add_argument("--out", required=True, help="output table file")
    p.set_defaults(func=_cmd_table)

    p = sub.add_parser("dataset", help="generate a mask/pattern dataset")
    add_common(p, out_dir=False)
    p.add_argument("--out", required=True, help="output dataset file")
    p.add_argument("--seed", type=int, help="override the configured rng seed")
    p.add_argument("--count", type=int, help="override the configured record count")
    p.add_argument("--features", action="store_true",
                   help="store spectra alongside patterns")
    p.add_argument("--jsonl", help="also export records as JSON lines")
    p.add_argument("--table", help="load a precomputed slit table")
    p.set_defaults(func=_cmd_dataset)

    p = sub.add_parser("forward", help="compute the pattern of one mask")
    add_common(p, out_dir=True)
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--mask", help="mask as a 0/1 string")
    group.add_argument("--mask-file", help="file holding one mask line")
    p.add_argument("--table", help="load a precomputed slit table")
    p.set_defaults(func=_cmd_forward)

    p = sub.add_parser("solve", help="search for the mask matching a target")
    add_common(p, out_dir=True)
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--target-mask",
                       help="mask string whose pattern becomes the target")
    group.add_argument("--target-file", help="pattern text file to match")
    p.add_argument("--seed", type=int, help="override the configured rng seed")
    p.add_argument("--generations", type=int,
                   help="override the configured generation budget")
    p.add_argument("--threshold", type=float,
                   help="override the configured early-stop fitness")
    p.add_argument("--seed-mask", help="mask string to spread into the "
                   "initial population (default: random initialization)")
    p.add_argument("--table", help="load a precomputed slit table")
    p.set_defaults(func=_cmd_solve)

    p = sub.add_parser("bench", help="benchmark seeded vs random initialization")
    add_common(p, out_dir=True)
    p.add_argument("--seed", type=int, help="override the configured rng seed")
    p.add_argument("--generations", type=int,
                   help="override the configured generation budget "
                   "(0 emits the targets and stops)")
    p.add_argument("--seed-masks",
                   help="file with one seed mask line per target "
                   "(default: the masks that generated the targets)")
    p.add_argument("--table", help="load a precomputed slit table")
    p.set_defaults(func=_cmd_bench)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ConfigurationError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIGURATION
    except NumericalError as exc:
        print(f"numerical error: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except DataFormatError as exc:
        print(f"data error: {exc}", file=sys.stderr)
        return EXIT_IO
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
