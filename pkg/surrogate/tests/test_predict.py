"""Seed-mask emission and the command-line round trip."""

import io

import numpy as np
import pytest

from conftest import run_seednet
from seednet import (
    ConfigError,
    TrainConfig,
    predict_masks,
    predict_probabilities,
    threshold_masks,
    train_model,
    write_mask_lines,
)


@pytest.fixture(scope="module")
def trained(corpus):
    masks, patterns = corpus
    model, _ = train_model(
        masks,
        patterns,
        TrainConfig(max_epochs=2, min_delta=0.0, augment_reversal=False),
    )
    return model


class TestPrediction:
    def test_thresholding_semantics(self):
        probabilities = np.array([[0.1, 0.5, 0.49999, 0.9]])
        assert threshold_masks(probabilities).tolist() == [[0, 1, 0, 1]]

    def test_mask_rows_are_binary_with_section_length(self, trained, corpus):
        _, patterns = corpus
        rows = predict_masks(trained, patterns[:7])
        assert rows.shape == (7, 16)
        assert set(np.unique(rows)) <= {0, 1}

    def test_deterministic(self, trained, corpus):
        _, patterns = corpus
        first = predict_probabilities(trained, patterns[:5])
        second = predict_probabilities(trained, patterns[:5])
        assert np.array_equal(first, second)

    def test_grid_mismatch_rejected(self, trained, corpus):
        _, patterns = corpus
        with pytest.raises(ConfigError, match="detector points"):
            predict_masks(trained, patterns[:2, :100])

    def test_write_mask_lines_format(self):
        handle = io.StringIO()
        write_mask_lines(handle, np.array([[1, 0, 1], [0, 0, 1]], dtype=np.uint8))
        assert handle.getvalue() == "101\n001\n"


class TestCommandLine:
    def test_train_then_predict_round_trip(self, workspace, tmp_path):
        model = tmp_path / "model.pt"
        metrics = tmp_path / "metrics.txt"
        seeds = tmp_path / "seeds.txt"
        out = run_seednet(
            "train",
            "--data", workspace["corpus"],
            "--table", workspace["table"],
            "--out", model,
            "--metrics", metrics,
            "--max-epochs", 2,
            "--min-delta", 0,
        )
        assert "trained 2 epochs" in out
        assert metrics.read_text().startswith(
            "# columns: epoch train_loss val_loss val_pattern_mse"
        )
        out = run_seednet(
            "predict",
            "--model", model,
            "--patterns", workspace["targets"],
            "--out", seeds,
        )
        assert "wrote 4 masks" in out
        lines = seeds.read_text().splitlines()
        assert len(lines) == 4
        assert all(len(line) == 16 and set(line) <= {"0", "1"} for line in lines)

    def test_repeated_runs_are_byte_identical(self, workspace, tmp_path):
        outputs = []
        for tag in ("a", "b"):
            model = tmp_path / f"model_{tag}.pt"
            metrics = tmp_path / f"metrics_{tag}.txt"
            seeds = tmp_path / f"seeds_{tag}.txt"
            run_seednet(
                "train",
                "--data", workspace["corpus"],
                "--out", model,
                "--metrics", metrics,
                "--max-epochs", 2,
                "--min-delta", 0,
            )
            run_seednet(
                "predict",
                "--model", model,
                "--patterns", workspace["targets"],
                "--out", seeds,
            )
            outputs.append((metrics.read_bytes(), seeds.read_bytes()))
        assert outputs[0] == outputs[1]

    def test_missing_corpus_exits_4(self, tmp_path):
        run_seednet(
            "train",
            "--data", tmp_path / "absent.jsonl",
            "--out", tmp_path / "model.pt",
            expect=4,
        )

    def test_malformed_corpus_exits_4(self, tmp_path):
        bad = tmp_path / "bad.jsonl"
        bad.write_text('{"mask": [1, 2], "pattern": [1.0]}\n')
        run_seednet(
            "train", "--data", bad, "--out", tmp_path / "model.pt", expect=4
        )

    def test_pattern_length_mismatch_exits_2(self, workspace, tmp_path):
        model = tmp_path / "model.pt"
        run_seednet(
            "train",
            "--data", workspace["corpus"],
            "--out", model,
            "--max-epochs", 1,
            "--min-delta", 0,
        )
        short = tmp_path / "short.jsonl"
        short.write_text('{"mask": [1, 0], "pattern": [1.0, 0.5, 0.25]}\n')
        run_seednet(
            "predict",
            "--model", model,
            "--patterns", short,
            "--out", tmp_path / "seeds.txt",
            expect=2,
        )

    def test_bad_train_parameters_exit_2(self, workspace, tmp_path):
        run_seednet(
            "train",
            "--data", workspace["corpus"],
            "--out", tmp_path / "model.pt",
            "--max-epochs", 0,
            expect=2,
        )
