"""From-scratch trainable classifier: layers, Adam, schedules, weights."""

from .backend import Backend, BackendFailure, RouterNetBackend, predict
from .classes import CLASS_BY_NAME, CLASS_NAMES, NUM_CLASSES, BodyPartClass
from .functional import (
    LabelOutOfRange,
    NonFiniteInput,
    accuracy,
    cross_entropy_grad,
    cross_entropy_loss,
    log_softmax,
    softmax,
)
from .layers import ShapeMismatch
from .network import (
    ARCH_NAME,
    PARAM_ORDER,
    PARAM_SHAPES,
    ModelParams,
    backward,
    forward,
    init_params,
    loss_and_grads,
    param_count,
    validate_params,
)
from .optim import AdamState, LrSchedule, adam_step, lr_at
from .synthetic import LabeledExample, class_pattern, dataset_arrays, make_synthetic_dataset
from .training import EmptyDataset, EpochStats, TrainConfig, evaluate_accuracy, train
from .weights import (
    BadMagic,
    ShapeMismatchWithArchitecture,
    TruncatedWeights,
    VersionUnsupported,
    WeightsError,
    load_weights,
    save_weights,
)

__all__ = [
    "ARCH_NAME",
    "AdamState",
    "Backend",
    "BackendFailure",
    "BadMagic",
    "BodyPartClass",
    "CLASS_BY_NAME",
    "CLASS_NAMES",
    "EmptyDataset",
    "EpochStats",
    "LabelOutOfRange",
    "LabeledExample",
    "LrSchedule",
    "ModelParams",
    "NUM_CLASSES",
    "NonFiniteInput",
    "PARAM_ORDER",
    "PARAM_SHAPES",
    "RouterNetBackend",
    "ShapeMismatch",
    "ShapeMismatchWithArchitecture",
    "TrainConfig",
    "TruncatedWeights",
    "VersionUnsupported",
    "WeightsError",
    "accuracy",
    "adam_step",
    "backward",
    "class_pattern",
    "cross_entropy_grad",
    "cross_entropy_loss",
    "dataset_arrays",
    "evaluate_accuracy",
    "forward",
    "init_params",
    "load_weights",
    "log_softmax",
    "loss_and_grads",
    "lr_at",
    "make_synthetic_dataset",
    "param_count",
    "predict",
    "save_weights",
    "softmax",
    "train",
    "validate_params",
]
