import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from dicomrouter import nn

GOLDEN_DIR = Path(__file__).parent / "data" / "golden"

# Desk-scale training setup shared by training tests, routing end-to-end
# tests and the acceptance suite.
DESK_SEED = 20250810
DESK_IMAGE_SIZE = 64
DESK_TRAIN_PER_CLASS = 200
DESK_VAL_PER_CLASS = 50
# The acceptance bound is "within 30 epochs"; this recipe crosses 0.95 by
# epoch 2 and trains past the first warm restart, keeping the suite fast.
DESK_EPOCHS = 16
DESK_CONFIG_SEED = 7
DESK_LR_MAX = 1e-3  # desk-scale rate; the shipped default stays 1e-4


def desk_dataset():
    per_class = DESK_TRAIN_PER_CLASS + DESK_VAL_PER_CLASS
    examples = nn.make_synthetic_dataset(per_class, DESK_IMAGE_SIZE, seed=DESK_SEED)
    train_set, val_set = [], []
    for cls in range(nn.NUM_CLASSES):
        block = examples[cls * per_class : (cls + 1) * per_class]
        train_set.extend(block[:DESK_TRAIN_PER_CLASS])
        val_set.extend(block[DESK_TRAIN_PER_CLASS:])
    return train_set, val_set


def desk_train_config() -> nn.TrainConfig:
    return nn.TrainConfig(
        epochs=DESK_EPOCHS,
        batch_size=32,
        seed=DESK_CONFIG_SEED,
        schedule=nn.LrSchedule(lr_max=DESK_LR_MAX),
    )


@pytest.fixture(scope="session")
def desk_model(tmp_path_factory):
    """Train the desk-scale model once per session; reused by prediction,
    routing and acceptance tests. Returns (params, history, elapsed_s)."""
    import time

    train_set, val_set = desk_dataset()
    start = time.monotonic()
    params, history = nn.train(train_set, val_set, desk_train_config())
    elapsed = time.monotonic() - start

    weights_path = tmp_path_factory.mktemp("weights") / "desk.rnmw"
    weights_path.write_bytes(nn.save_weights(params))
    return {"params": params, "history": history, "elapsed_s": elapsed, "weights_path": weights_path}


@pytest.fixture(scope="session")
def desk_backend(desk_model):
    return nn.RouterNetBackend(desk_model["params"], input_size=DESK_IMAGE_SIZE)


class FixedProbabilityBackend:
    """Test double emitting constant logits (hence constant probabilities)."""

    name = "fixed"

    def __init__(self, logits):
        self._logits = np.asarray(logits, dtype=np.float64)

    def logits(self, batch):
        return np.tile(self._logits, (batch.shape[0], 1))

    def parameter_count(self) -> int:
        return 0


@pytest.fixture
def uniform_backend():
    return FixedProbabilityBackend(np.zeros(nn.NUM_CLASSES))
