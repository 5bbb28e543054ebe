"""Reader for the JSON-lines corpus exported by the mwlith dataset command.

Each line is an object with a ``"mask"`` key (list of 0/1 section states)
and a ``"pattern"`` key (list of detector intensities, peak-normalised to
1).  All lines in a file must agree on both lengths.
"""

from __future__ import annotations

import json
from typing import IO

import numpy as np

from .errors import ConfigError, DataError


def read_corpus(source: IO[str]) -> tuple[np.ndarray, np.ndarray]:
    """Parse mask/pattern records from an open text stream.

    Returns ``(masks, patterns)`` with shapes ``(n_records, n_sections)``
    (dtype uint8) and ``(n_records, n_detector)`` (dtype float64).
    """
    mask_rows: list[list[int]] = []
    pattern_rows: list[list[float]] = []
    for line_number, raw in enumerate(source, start=1):
        line = raw.strip()
        if not line:
            continue
        try:
            record = json.loads(line)
        except json.JSONDecodeError as exc:
            raise DataError(f"line {line_number}: invalid JSON ({exc.msg})") from exc
        if not isinstance(record, dict):
            raise DataError(f"line {line_number}: expected a JSON object")
        for key in ("mask", "pattern"):
            if key not in record:
                raise DataError(f"line {line_number}: missing key {key!r}")
        mask = record["mask"]
        pattern = record["pattern"]
        if not isinstance(mask, list) or any(value not in (0, 1) for value in mask):
            raise DataError(f"line {line_number}: mask must be a list of 0/1 values")
        if not isinstance(pattern, list) or not all(
            isinstance(value, (int, float)) for value in pattern
        ):
            raise DataError(f"line {line_number}: pattern must be a list of numbers")
        if mask_rows:
            if len(mask) != len(mask_rows[0]):
                raise DataError(
                    f"line {line_number}: mask length {len(mask)} differs from "
                    f"first record ({len(mask_rows[0])})"
                )
            if len(pattern) != len(pattern_rows[0]):
                raise DataError(
                    f"line {line_number}: pattern length {len(pattern)} differs "
                    f"from first record ({len(pattern_rows[0])})"
                )
        elif not mask or not pattern:
            raise DataError(f"line {line_number}: empty mask or pattern")
        mask_rows.append(mask)
        pattern_rows.append(pattern)
    if not mask_rows:
        raise DataError("no records found")
    masks = np.asarray(mask_rows, dtype=np.uint8)
    patterns = np.asarray(pattern_rows, dtype=np.float64)
    return masks, patterns


def load_corpus(path: str) -> tuple[np.ndarray, np.ndarray]:
    """Read a corpus file from disk.  See :func:`read_corpus`."""
    with open(path, "r", encoding="utf-8") as handle:
        return read_corpus(handle)


def left_align(mask_rows: np.ndarray) -> np.ndarray:
    """Shift each mask so its first open section sits at index 0.

    A rigid translation of a mask leaves its detector pattern unchanged (it
    only multiplies the field by a position-dependent phase of unit
    modulus), so a corpus labels each pattern with an arbitrary translate.
    Aligning every label to the leftmost representative removes that
    ambiguity without changing what any mask produces.  All-blocked rows
    pass through unchanged.
    """
    rows = np.atleast_2d(np.asarray(mask_rows, dtype=np.uint8))
    aligned = np.zeros_like(rows)
    for i, row in enumerate(rows):
        open_at = np.flatnonzero(row)
        if open_at.size:
            shift = int(open_at[0])
            aligned[i, : row.size - shift] = row[shift:]
    return aligned


def split_indices(
    count: int, seed: int
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Shuffle ``range(count)`` and split it into train/validation/test parts.

    The test part takes one tenth of the records, the validation part one
    tenth of the remainder, and the training part everything else, so a
    1000-record corpus splits 810/90/100.  The shuffle is seeded, making
    the split a pure function of ``(count, seed)``.
    """
    if count <= 0:
        raise ConfigError(f"cannot split an empty corpus (count={count})")
    n_test = count // 10
    n_val = (count - n_test) // 10
    n_train = count - n_test - n_val
    if n_train == 0 or n_val == 0 or n_test == 0:
        raise ConfigError(
            f"corpus of {count} records leaves an empty split "
            f"(train={n_train}, val={n_val}, test={n_test})"
        )
    order = np.random.default_rng(seed).permutation(count)
    test = order[:n_test]
    val = order[n_test : n_test + n_val]
    train = order[n_test + n_val :]
    return train, val, test
