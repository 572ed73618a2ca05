"""Forward/backward primitives: 3x3 same-padding conv, ReLU, 2x2 max pool,
global average pool, fully connected. All take and return NCHW numpy arrays
and keep the caller's dtype (float32 in training, float64 in gradient
checks)."""
from __future__ import annotations

import numpy as np
from numpy.lib.stride_tricks import sliding_window_view


class ShapeMismatch(ValueError):
    pass


def conv3x3_forward(x: np.ndarray, w: np.ndarray, b: np.ndarray):
    """x: (B,C,H,W), w: (F,C,3,3), b: (F,). Stride 1, zero padding 1.

    im2col layout is (B, C*9, H*W) so the matmul reads each shifted window
    plane as a contiguous run.
    """
    if x.ndim != 4 or w.ndim != 4 or x.shape[1] != w.shape[1]:
        raise ShapeMismatch(f"conv shapes incompatible: x{x.shape} w{w.shape}")
    batch, _, h, width = x.shape
    filters = w.shape[0]

    channels = x.shape[1]
    xp = np.pad(x, ((0, 0), (0, 0), (1, 1), (1, 1)))
    cols6 = np.empty((batch, channels, 3, 3, h, width), dtype=x.dtype)
    for i in range(3):
        for j in range(3):
            cols6[:, :, i, j] = xp[:, :, i : i + h, j : j + width]
    cols = cols6.reshape(batch, channels * 9, h * width)

    wmat = w.reshape(filters, -1)
    out = (wmat @ cols).reshape(batch, filters, h, width) + b[:, None, None]
    cache = (x.shape, cols, w)
    return out, cache


def conv3x3_backward(dout: np.ndarray, cache):
    x_shape, cols, w = cache
    batch, channels, h, width = x_shape
    filters = w.shape[0]

    dout_mat = dout.reshape(batch, filters, h * width)
    dw = np.tensordot(dout_mat, cols, axes=([0, 2], [0, 2])).reshape(w.shape)
    db = dout.sum(axis=(0, 2, 3))

    dcols = (w.reshape(filters, -1).T @ dout_mat).reshape(batch, channels, 3, 3, h, width)
    dxp = np.zeros((batch, channels, h + 2, width + 2), dtype=dout.dtype)
    for i in range(3):
        for j in range(3):
            dxp[:, :, i : i + h, j : j + width] += dcols[:, :, i, j]
    dx = dxp[:, :, 1 : h + 1, 1 : width + 1]
    return dx, dw, db


def relu_forward(x: np.ndarray):
    return np.maximum(x, 0), x


def relu_backward(dout: np.ndarray, cache):
    return dout * (cache > 0)


def _pool_quadrants(x: np.ndarray):
    return x[:, :, 0::2, 0::2], x[:, :, 0::2, 1::2], x[:, :, 1::2, 0::2], x[:, :, 1::2, 1::2]


def maxpool2_forward(x: np.ndarray):
    """2x2 max pooling with stride 2; spatial dims must be even.
    Ties resolve to the first position in (top-left, top-right,
    bottom-left, bottom-right) order."""
    batch, channels, h, width = x.shape
    if h % 2 or width % 2:
        raise ShapeMismatch(f"maxpool2 needs even spatial dims, got {h}x{width}")
    a, b, c, d = _pool_quadrants(x)
    out = np.maximum(np.maximum(a, b), np.maximum(c, d))
    return out, (x, out)


def maxpool2_backward(dout: np.ndarray, cache):
    x, out = cache
    a, b, c, d = _pool_quadrants(x)
    wa = a == out
    wb = (b == out) & ~wa
    wc = (c == out) & ~(wa | wb)
    wd = ~(wa | wb | wc)
    dx = np.zeros_like(x)
    dx[:, :, 0::2, 0::2] = dout * wa
    dx[:, :, 0::2, 1::2] = dout * wb
    dx[:, :, 1::2, 0::2] = dout * wc
    dx[:, :, 1::2, 1::2] = dout * wd
    return dx


def global_avg_pool_forward(x: np.ndarray):
    return x.mean(axis=(2, 3)), x.shape


def global_avg_pool_backward(dout: np.ndarray, cache):
    batch, channels, h, width = cache
    scale = 1.0 / (h * width)
    return np.broadcast_to((dout * scale)[:, :, None, None], (batch, channels, h, width)).astype(dout.dtype)


def dense_forward(x: np.ndarray, w: np.ndarray, b: np.ndarray):
    """x: (B,D), w: (D,M), b: (M,)."""
    if x.ndim != 2 or x.shape[1] != w.shape[0]:
        raise ShapeMismatch(f"dense shapes incompatible: x{x.shape} w{w.shape}")
    return x @ w + b, (x, w)


def dense_backward(dout: np.ndarray, cache):
    x, w = cache
    return dout @ w.T, x.T @ dout, dout.sum(axis=0)
