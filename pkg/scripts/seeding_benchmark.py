"""Seeded vs random initialization, with imperfect seeds.

The built-in benchmark seeds each search with the exact mask that generated
its target. A learned seeder will not be exact, so this experiment corrupts
each generating mask by a fixed number of bit flips first and measures how
much of the advantage survives.

Prints the paired percent fitness difference per flip count and writes the
advantage curves to --out-dir.
"""

import argparse
import os

import numpy as np

from mwlith import GaConfig, GeometryConfig, DetectorGrid, Mask
from mwlith import bench_targets, build_table, compare_seeding

FMT = "%.17g"


def corrupted_seeds(targets, flips: int, rng: np.random.Generator) -> list[Mask]:
    """Generating masks with ``flips`` distinct sections toggled each."""
    seeds = []
    for mask, _ in targets:
        row = mask.sections.copy()
        while True:
            candidate = row.copy()
            positions = rng.choice(row.size, size=flips, replace=False)
            candidate[positions] ^= 1
            if candidate.any():
                break
        seeds.append(Mask(candidate))
    return seeds


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out-dir", default="seeding_out")
    parser.add_argument("--sections", type=int, default=16)
    parser.add_argument("--targets", type=int, default=10)
    parser.add_argument("--repeats", type=int, default=5)
    parser.add_argument("--generations", type=int, default=300)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--flips", type=int, nargs="+", default=[0, 2, 4, 8],
                        help="bit flips applied to each seed mask; 0 is the "
                        "exact generating mask")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    geometry = GeometryConfig(
        wavelength=1.0e-10,
        source_distance=1.0,
        screen_distance=300.0e-6,
        membrane_thickness=5.0e-9,
        c3_coefficient=1.0e-49,
        particle_mass=6.6464731e-27,
        n_sections=args.sections,
    )
    grid = DetectorGrid()
    table = build_table(geometry, grid, "matter")
    targets = bench_targets(table, args.seed, args.targets)
    config = GaConfig(generations=args.generations)

    os.makedirs(args.out_dir, exist_ok=True)
    curves = []
    for flips in args.flips:
        if not 0 <= flips <= args.sections:
            raise SystemExit(f"flip count {flips} outside 0..{args.sections}")
        seed_rng = np.random.default_rng([args.seed, flips])
        seeds = corrupted_seeds(targets, flips, seed_rng)
        result = compare_seeding(
            targets, seeds, config, table, args.seed, args.repeats
        )
        curves.append((flips, result.pct_curve))
        verdict = "significant" if result.significant else "not significant"
        print(f"flips {flips:2d}: mean advantage {FMT % result.mean_pct} % "
              f"(stderr {FMT % result.stderr_pct}, {verdict})")

    curve_path = os.path.join(args.out_dir, "advantage_curves.txt")
    with open(curve_path, "w", encoding="utf-8", newline="\n") as handle:
        handle.write("# columns: generation, then mean pct advantage per "
                     f"flip count {args.flips}\n")
        for g in range(args.generations + 1):
            row = " ".join(FMT % curve[g] for _, curve in curves)
            handle.write(f"{g} {row}\n")

    import matplotlib

    matplotlib.use("Agg", force=True)
    import matplotlib.pyplot as plt

    fig, ax = plt.subplots(figsize=(8.0, 4.5))
    for flips, curve in curves:
        ax.plot(np.arange(curve.size), curve, lw=1.1, label=f"{flips} flips")
    ax.axhline(0.0, color="gray", lw=0.8)
    ax.set_xlabel("generation")
    ax.set_ylabel("mean paired fitness difference (%)")
    ax.set_title("seeding advantage vs seed quality")
    ax.legend()
    fig.tight_layout()
    fig.savefig(os.path.join(args.out_dir, "seeding.png"), dpi=150,
                metadata={"Software": None})
    plt.close(fig)
    print(f"wrote {curve_path}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
