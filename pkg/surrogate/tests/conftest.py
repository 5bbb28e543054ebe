"""Shared fixtures: small input files produced by the mwlith command line.

Everything seednet consumes is generated here through subprocess calls to
the producer CLI, never through its Python API — the tests exercise the
same file contract the package is built against.
"""

import json
import subprocess
import sys

import numpy as np
import pytest

from seednet import load_corpus, load_table

CONFIG_TEXT = """\
wavelength = 1.0e-10
source_distance = 1.0
screen_distance = 300.0e-6
membrane_thickness = 5.0e-9
c3_coefficient = 1.0e-49
particle_mass = 6.6464731e-27
n_sections = 16
n_points = 256
r_max = 12.0e-6
population_size = 30
bench_targets = 4
bench_repeats = 2
dataset_count = 300
"""

MASK = "0110100101100010"


def run_mwlith(*args):
    """Run one producer command, asserting success."""
    proc = subprocess.run(
        [sys.executable, "-m", "mwlith.cli", *[str(a) for a in args]],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0, f"mwlith {args} failed:\n{proc.stderr}"
    return proc.stdout


def run_seednet(*args, expect=0):
    """Run one seednet command, asserting the expected exit code."""
    proc = subprocess.run(
        [sys.executable, "-m", "seednet.cli", *[str(a) for a in args]],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == expect, (
        f"seednet {args} exited {proc.returncode}, expected {expect}:\n"
        f"{proc.stdout}\n{proc.stderr}"
    )
    return proc.stdout + proc.stderr


@pytest.fixture(scope="session")
def workspace(tmp_path_factory):
    """Config, table, corpus, a forward pattern, and bench targets."""
    root = tmp_path_factory.mktemp("producer_files")
    config = root / "run.cfg"
    config.write_text(CONFIG_TEXT, encoding="utf-8")
    table = root / "slits.mwst"
    run_mwlith("table", "--config", config, "--out", table)
    corpus = root / "corpus.jsonl"
    run_mwlith(
        "dataset",
        "--config", config,
        "--table", table,
        "--seed", 11,
        "--out", root / "corpus.mwld",
        "--jsonl", corpus,
    )
    run_mwlith(
        "forward",
        "--config", config,
        "--table", table,
        "--mask", MASK,
        "--out-dir", root / "fwd",
    )
    run_mwlith(
        "bench",
        "--config", config,
        "--table", table,
        "--seed", 5,
        "--generations", 0,
        "--out-dir", root / "bench0",
    )
    return {
        "root": root,
        "config": config,
        "table": table,
        "corpus": corpus,
        "pattern_txt": root / "fwd" / "pattern.txt",
        "targets": root / "bench0" / "bench_targets.jsonl",
    }


@pytest.fixture(scope="session")
def table(workspace):
    return load_table(str(workspace["table"]))


@pytest.fixture(scope="session")
def corpus(workspace):
    return load_corpus(str(workspace["corpus"]))


@pytest.fixture(scope="session")
def target_records(workspace):
    with open(workspace["targets"], "r", encoding="utf-8") as handle:
        return [json.loads(line) for line in handle]


def read_pattern_file(path):
    """Parse a pattern text file into (positions, values) float64 arrays."""
    positions, values = [], []
    with open(path, "r", encoding="utf-8") as handle:
        for line in handle:
            if line.startswith("#"):
                continue
            left, right = line.split()
            positions.append(float(left))
            values.append(float(right))
    return np.asarray(positions), np.asarray(values)
