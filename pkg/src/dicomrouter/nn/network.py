"""The built-in classifier network.

Architecture (input NCHW, any even spatial size, 1 channel):

    conv3x3 1->8,  ReLU, maxpool2
    conv3x3 8->16, ReLU, maxpool2
    conv3x3 16->32, ReLU, global average pool
    fully connected 32->5

The head has exactly five output units, one per routing group. Fully
convolutional plus global pooling, so weights are independent of the
input resolution.
"""
from __future__ import annotations

import os
from dataclasses import dataclass, field

import numpy as np

from .classes import NUM_CLASSES
from .functional import cross_entropy_grad, cross_entropy_loss
from .layers import (
    ShapeMismatch,
    conv3x3_backward,
    conv3x3_forward,
    dense_backward,
    dense_forward,
    global_avg_pool_backward,
    global_avg_pool_forward,
    maxpool2_backward,
    maxpool2_forward,
    relu_backward,
    relu_forward,
)

ARCH_NAME = "routernet-mu"

PARAM_SHAPES: dict[str, tuple[int, ...]] = {
    "conv1.w": (8, 1, 3, 3),
    "conv1.b": (8,),
    "conv2.w": (16, 8, 3, 3),
    "conv2.b": (16,),
    "conv3.w": (32, 16, 3, 3),
    "conv3.b": (32,),
    "fc.w": (32, NUM_CLASSES),
    "fc.b": (NUM_CLASSES,),
}
PARAM_ORDER = tuple(PARAM_SHAPES)

# Optional NaN checking after every layer; costs a pass over activations.
DEBUG_NAN_CHECKS = bool(os.environ.get("DICOMROUTER_NAN_CHECKS"))


def param_count() -> int:
    return sum(int(np.prod(shape)) for shape in PARAM_SHAPES.values())


@dataclass
class ModelParams:
    """Named weight tensors in a fixed order plus the architecture name."""

    tensors: dict[str, np.ndarray]
    arch: str = ARCH_NAME

    def copy(self) -> "ModelParams":
        return ModelParams({k: v.copy() for k, v in self.tensors.items()}, arch=self.arch)

    def astype(self, dtype) -> "ModelParams":
        return ModelParams({k: v.astype(dtype) for k, v in self.tensors.items()}, arch=self.arch)

    def count(self) -> int:
        return sum(v.size for v in self.tensors.values())


def validate_params(params: ModelParams) -> None:
    if set(params.tensors) != set(PARAM_SHAPES):
        raise ShapeMismatch(
            f"parameter names {sorted(params.tensors)} do not match architecture {sorted(PARAM_SHAPES)}"
        )
    for name, shape in PARAM_SHAPES.items():
        if params.tensors[name].shape != shape:
            raise ShapeMismatch(f"{name}: shape {params.tensors[name].shape} != {shape}")


def init_params(seed: int, dtype=np.float32) -> ModelParams:
    """He-style uniform fan-in initialization for weights, zero biases."""
    rng = np.random.default_rng(seed)
    tensors: dict[str, np.ndarray] = {}
    for name in PARAM_ORDER:
        shape = PARAM_SHAPES[name]
        if name.endswith(".b"):
            tensors[name] = np.zeros(shape, dtype=dtype)
        else:
            fan_in = int(np.prod(shape[1:])) if len(shape) == 4 else shape[0]
            limit = np.sqrt(6.0 / fan_in)
            tensors[name] = rng.uniform(-limit, limit, size=shape).astype(dtype)
    return ModelParams(tensors)


def _check_finite(name: str, arr: np.ndarray) -> None:
    if DEBUG_NAN_CHECKS and not np.isfinite(arr).all():
        raise FloatingPointError(f"non-finite values after {name}")


def _forward_with_cache(params: ModelParams, x: np.ndarray):
    t = params.tensors
    caches = {}
    out, caches["conv1"] = conv3x3_forward(x, t["conv1.w"], t["conv1.b"])
    _check_finite("conv1", out)
    out, caches["relu1"] = relu_forward(out)
    out, caches["pool1"] = maxpool2_forward(out)
    out, caches["conv2"] = conv3x3_forward(out, t["conv2.w"], t["conv2.b"])
    _check_finite("conv2", out)
    out, caches["relu2"] = relu_forward(out)
    out, caches["pool2"] = maxpool2_forward(out)
    out, caches["conv3"] = conv3x3_forward(out, t["conv3.w"], t["conv3.b"])
    _check_finite("conv3", out)
    out, caches["relu3"] = relu_forward(out)
    out, caches["gap"] = global_avg_pool_forward(out)
    logits, caches["fc"] = dense_forward(out, t["fc.w"], t["fc.b"])
    _check_finite("fc", logits)
    return logits, caches


def forward(params: ModelParams, batch: np.ndarray) -> np.ndarray:
    """Batch (B,1,H,W) to logits (B,5). Deterministic."""
    validate_params(params)
    if batch.ndim != 4 or batch.shape[1] != 1:
        raise ShapeMismatch(f"expected batch shape (B,1,H,W), got {batch.shape}")
    logits, _ = _forward_with_cache(params, batch)
    return logits


def loss_and_grads(params: ModelParams, batch: np.ndarray, labels: np.ndarray):
    """Mean-reduced cross-entropy loss and gradients for every parameter."""
    logits, caches = _forward_with_cache(params, batch)
    loss = cross_entropy_loss(logits, labels, reduction="mean")
    dlogits = cross_entropy_grad(logits, labels).astype(batch.dtype)

    grads: dict[str, np.ndarray] = {}
    dout, grads["fc.w"], grads["fc.b"] = dense_backward(dlogits, caches["fc"])
    dout = global_avg_pool_backward(dout, caches["gap"])
    dout = relu_backward(dout, caches["relu3"])
    dout, grads["conv3.w"], grads["conv3.b"] = conv3x3_backward(dout, caches["conv3"])
    dout = maxpool2_backward(dout, caches["pool2"])
    dout = relu_backward(dout, caches["relu2"])
    dout, grads["conv2.w"], grads["conv2.b"] = conv3x3_backward(dout, caches["conv2"])
    dout = maxpool2_backward(dout, caches["pool1"])
    dout = relu_backward(dout, caches["relu1"])
    _, grads["conv1.w"], grads["conv1.b"] = conv3x3_backward(dout, caches["conv1"])
    grads = {name: grads[name] for name in PARAM_ORDER}
    return loss, grads


def backward(params: ModelParams, batch: np.ndarray, labels: np.ndarray) -> dict[str, np.ndarray]:
    """Gradients of the mean-reduced loss, shaped like the parameters."""
    validate_params(params)
    if batch.ndim != 4 or batch.shape[1] != 1:
        raise ShapeMismatch(f"expected batch shape (B,1,H,W), got {batch.shape}")
    _, grads = loss_and_grads(params, batch, labels)
    return grads
