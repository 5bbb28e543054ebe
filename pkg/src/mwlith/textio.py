"""Plain-text serialization for patterns, traces, masks and targets.

Floats are written with %.17g so a read-back reproduces every float64
bit for bit; files produced from the same inputs are byte identical.
Lines starting with ``#`` are comments, readers skip them.
"""

from __future__ import annotations

import json
from typing import Iterable, TextIO

import numpy as np

from .errors import ConfigurationError, DataFormatError
from .fields import IntensityPattern
from .geometry import DetectorGrid, GeometryConfig, Mask


def _fmt(value: float) -> str:
    return "%.17g" % value


def write_pattern_text(sink: TextIO, pattern: IntensityPattern) -> None:
    sink.write("# intensity pattern\n")
    sink.write(f"# normalization {pattern.normalization}\n")
    sink.write(f"# r_max {_fmt(pattern.grid.r_max)}\n")
    sink.write(f"# n_points {pattern.grid.n_points}\n")
    sink.write("# columns: position_m intensity\n")
    for r, v in zip(pattern.grid.positions, pattern.values):
        sink.write(f"{_fmt(r)} {_fmt(v)}\n")


def read_pattern_text(source: TextIO) -> IntensityPattern:
    header: dict[str, str] = {}
    rows: list[tuple[float, float]] = []
    for lineno, line in enumerate(source, start=1):
        stripped = line.strip()
        if not stripped:
            continue
        if stripped.startswith("#"):
            parts = stripped[1:].split()
            if len(parts) == 2 and parts[0] in ("normalization", "r_max", "n_points"):
                header[parts[0]] = parts[1]
            continue
        fields = stripped.split()
        if len(fields) != 2:
            raise DataFormatError(f"line {lineno}: expected two columns")
        rows.append((float(fields[0]), float(fields[1])))
    for key in ("normalization", "r_max", "n_points"):
        if key not in header:
            raise DataFormatError(f"pattern file is missing the {key} header")
    grid = DetectorGrid(r_max=float(header["r_max"]), n_points=int(header["n_points"]))
    if len(rows) != grid.n_points:
        raise DataFormatError(
            f"pattern file has {len(rows)} rows, header says {grid.n_points}"
        )
    data = np.array(rows, dtype=np.float64)
    if not np.array_equal(data[:, 0], grid.positions):
        raise DataFormatError("pattern file positions do not match its header grid")
    return IntensityPattern(
        grid=grid, values=data[:, 1], normalization=header["normalization"]
    )


def write_trace_text(
    sink: TextIO, best_fitness: np.ndarray, mean_fitness: np.ndarray
) -> None:
    sink.write("# search trace\n")
    sink.write("# columns: generation best_fitness mean_fitness\n")
    for g, (b, m) in enumerate(zip(best_fitness, mean_fitness)):
        sink.write(f"{g} {_fmt(b)} {_fmt(m)}\n")


def read_trace_text(source: TextIO) -> tuple[np.ndarray, np.ndarray]:
    best, mean = [], []
    for lineno, line in enumerate(source, start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        fields = stripped.split()
        if len(fields) != 3:
            raise DataFormatError(f"line {lineno}: expected three columns")
        if int(fields[0]) != len(best):
            raise DataFormatError(f"line {lineno}: generations out of order")
        best.append(float(fields[1]))
        mean.append(float(fields[2]))
    return np.array(best, dtype=np.float64), np.array(mean, dtype=np.float64)


def write_mask_lines(sink: TextIO, masks: Iterable[Mask]) -> None:
    for mask in masks:
        sink.write(mask.to_string() + "\n")


def read_mask_lines(source: TextIO, n_sections: int | None = None) -> list[Mask]:
    masks = []
    for lineno, line in enumerate(source, start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        try:
            mask = Mask.from_string(stripped)
        except ConfigurationError as exc:
            raise DataFormatError(f"line {lineno}: {exc}") from exc
        if n_sections is not None and mask.n_sections != n_sections:
            raise DataFormatError(
                f"line {lineno}: mask has {mask.n_sections} sections, "
                f"expected {n_sections}"
            )
        masks.append(mask)
    return masks


def write_targets_jsonl(
    sink: TextIO, targets: Iterable[tuple[Mask, IntensityPattern]]
) -> None:
    """One compact JSON object per line: {"mask": [...], "pattern": [...]}."""
    for mask, pattern in targets:
        record = {
            "mask": [int(s) for s in mask.sections],
            "pattern": [float(v) for v in pattern.values],
        }
        sink.write(json.dumps(record, separators=(",", ":")) + "\n")


def read_targets_jsonl(
    source: TextIO, geometry: GeometryConfig, grid: DetectorGrid
) -> list[tuple[Mask, IntensityPattern]]:
    targets = []
    for lineno, line in enumerate(source, start=1):
        stripped = line.strip()
        if not stripped:
            continue
        try:
            record = json.loads(stripped)
        except json.JSONDecodeError as exc:
            raise DataFormatError(f"line {lineno}: {exc}") from exc
        if "mask" not in record or "pattern" not in record:
            raise DataFormatError(f"line {lineno}: missing mask or pattern")
        mask = Mask(np.asarray(record["mask"], dtype=np.uint8))
        if mask.n_sections != geometry.n_sections:
            raise DataFormatError(
                f"line {lineno}: mask has {mask.n_sections} sections, "
                f"expected {geometry.n_sections}"
            )
        values = np.asarray(record["pattern"], dtype=np.float64)
        if values.shape != (grid.n_points,):
            raise DataFormatError(
                f"line {lineno}: pattern has {values.size} samples, "
                f"expected {grid.n_points}"
            )
        targets.append(
            (mask, IntensityPattern(grid=grid, values=values, normalization="peak-one"))
        )
    return targets
