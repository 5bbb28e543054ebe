"""Architecture invariants and the capacity sanity check."""

import numpy as np
import pytest
import torch
from torch import nn

from seednet import (
    ConfigError,
    ModelSpec,
    TrainConfig,
    build_model,
    network_inputs,
    train_model,
)
from seednet.model import ResidualBlock, spec_from_dict, spec_to_dict

SPEC = ModelSpec(n_sections=16, n_detector=256)


def random_patterns(n, n_detector=256, seed=0):
    patterns = np.random.default_rng(seed).random((n, n_detector))
    return patterns / patterns.max(axis=1, keepdims=True)


class TestModelSpec:
    def test_spectrum_length(self):
        assert SPEC.n_spectrum == 129

    def test_round_trip_through_dict(self):
        assert spec_from_dict(spec_to_dict(SPEC)) == SPEC

    def test_even_kernel_rejected(self):
        with pytest.raises(ConfigError, match="odd"):
            ModelSpec(n_sections=16, n_detector=256, kernel_size=8)

    def test_oversized_pool_rejected(self):
        with pytest.raises(ConfigError, match="pool"):
            ModelSpec(n_sections=16, n_detector=256, pattern_pool=512)

    def test_non_positive_field_rejected(self):
        with pytest.raises(ConfigError, match="positive"):
            ModelSpec(n_sections=0, n_detector=256)

    def test_bad_dict_rejected(self):
        with pytest.raises(ConfigError, match="invalid"):
            spec_from_dict({"n_sections": 16, "bogus": 1})


class TestArchitecture:
    def test_output_shape_and_open_interval(self):
        model = build_model(SPEC, seed=0)
        out = model(*network_inputs(random_patterns(5)))
        assert out.shape == (5, 16)
        assert (out > 0.0).all() and (out < 1.0).all()

    def test_no_normalisation_layers(self):
        banned = (nn.BatchNorm1d, nn.BatchNorm2d, nn.LayerNorm, nn.GroupNorm)
        model = build_model(SPEC, seed=0)
        assert not any(isinstance(m, banned) for m in model.modules())

    def test_residual_block_passes_input_through_when_convs_are_zero(self):
        block = ResidualBlock(channels=4, kernel_size=3)
        with torch.no_grad():
            for conv in (block.first, block.second):
                conv.weight.zero_()
                conv.bias.zero_()
        x = torch.randn(2, 4, 20)
        assert torch.equal(block(x), x)

    def test_build_is_deterministic_in_seed(self):
        state_a = build_model(SPEC, seed=3).state_dict()
        state_b = build_model(SPEC, seed=3).state_dict()
        state_c = build_model(SPEC, seed=4).state_dict()
        assert all(torch.equal(state_a[k], state_b[k]) for k in state_a)
        assert any(not torch.equal(state_a[k], state_c[k]) for k in state_a)

    def test_forward_is_deterministic(self):
        model = build_model(SPEC, seed=0)
        inputs = network_inputs(random_patterns(3))
        with torch.no_grad():
            assert torch.equal(model(*inputs), model(*inputs))


class TestCapacity:
    def test_one_batch_overfit_drives_focal_loss_down(self, table, corpus):
        # One record duplicated to a full batch must be memorised almost
        # perfectly by a single-batch training run.
        masks, patterns = corpus
        duplicated_masks = np.tile(masks[0], (225, 1))
        duplicated_patterns = np.tile(patterns[0], (225, 1))
        config = TrainConfig(
            learning_rate=1e-3,
            max_epochs=40,
            min_delta=0.0,
            augment_reversal=False,
        )
        _, metrics = train_model(duplicated_masks, duplicated_patterns, config)
        final = metrics[-1].train_loss
        assert final < 0.01
        assert final < 1e-6
