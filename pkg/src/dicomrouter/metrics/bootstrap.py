"""Percentile bootstrap confidence intervals with a documented PRNG.

Resampling uses xoshiro256** streams so identical (seed, iteration) pairs
reproduce identical replicates in any implementation:

* replicate r seeds a SplitMix64 generator with
  (seed + (r + 1) * 0x9E3779B97F4A7C15) mod 2^64,
* four SplitMix64 outputs form the xoshiro256** state,
* each draw maps a 64-bit output to an index via
  floor(((x >> 11) / 2^53) * N).

Streams are independent per replicate, so iterations may be evaluated in
any order (or concurrently) with identical results.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

_GOLDEN = np.uint64(0x9E3779B97F4A7C15)
_MIX1 = np.uint64(0xBF58476D1CE4E5B9)
_MIX2 = np.uint64(0x94D049BB133111EB)
_U64 = np.uint64


class EmptyInput(ValueError):
    pass


@dataclass(frozen=True)
class BootstrapCI:
    point: float
    lo: float
    hi: float
    level: float = 0.95
    iterations: int = 10_000
    seed: int = 0


def _splitmix64(state: np.ndarray, count: int) -> np.ndarray:
    """count outputs per lane; state shape (n,), result shape (count, n)."""
    out = np.empty((count, state.shape[0]), dtype=np.uint64)
    for i in range(count):
        state = state + _GOLDEN
        z = state
        z = (z ^ (z >> _U64(30))) * _MIX1
        z = (z ^ (z >> _U64(27))) * _MIX2
        out[i] = z ^ (z >> _U64(31))
    return out


def _rotl(x: np.ndarray, k: int) -> np.ndarray:
    return (x << _U64(k)) | (x >> _U64(64 - k))


def _xoshiro_states(seed: int, replicates: np.ndarray) -> list[np.ndarray]:
    base = (_U64(seed & 0xFFFFFFFFFFFFFFFF) + (replicates.astype(np.uint64) + _U64(1)) * _GOLDEN)
    s = _splitmix64(base, 4)
    return [s[0].copy(), s[1].copy(), s[2].copy(), s[3].copy()]


def _xoshiro_next(s: list[np.ndarray]) -> np.ndarray:
    """xoshiro256** step for every lane; mutates the state in place."""
    result = _rotl(s[1] * _U64(5), 7) * _U64(9)
    t = s[1] << _U64(17)
    s[2] = s[2] ^ s[0]
    s[3] = s[3] ^ s[1]
    s[1] = s[1] ^ s[2]
    s[0] = s[0] ^ s[3]
    s[2] = s[2] ^ t
    s[3] = _rotl(s[3], 45)
    return result


def resample_indices(seed: int, first_replicate: int, count: int, n: int) -> np.ndarray:
    """Index matrix (count, n) for replicates [first, first+count)."""
    with np.errstate(over="ignore"):
        states = _xoshiro_states(seed, np.arange(first_replicate, first_replicate + count))
        idx = np.empty((count, n), dtype=np.intp)
        for col in range(n):
            x = _xoshiro_next(states)
            u = (x >> _U64(11)).astype(np.float64) * 2.0**-53
            idx[:, col] = np.floor(u * n).astype(np.intp)
    return idx


def bootstrap_ci(
    predictions,
    labels,
    metric_fn: Callable[[np.ndarray, np.ndarray], float],
    iterations: int = 10_000,
    level: float = 0.95,
    seed: int = 0,
    chunk_size: int = 2_000,
) -> BootstrapCI:
    """Percentile-method CI for metric_fn over resampled (pred, label)
    pairs. lo/hi are the (1-level)/2 and 1-(1-level)/2 percentiles with
    linear interpolation between closest ranks."""
    predictions = np.asarray(predictions)
    labels = np.asarray(labels)
    if predictions.shape != labels.shape:
        raise ValueError("predictions and labels must have equal length")
    n = predictions.shape[0]
    if n < 1:
        raise EmptyInput("bootstrap needs at least one example")
    if iterations < 1:
        raise ValueError("iterations must be >= 1")
    if not 0.0 < level < 1.0:
        raise ValueError("level must lie in (0, 1)")

    point = float(metric_fn(predictions, labels))

    stats = np.empty(iterations, dtype=np.float64)
    for start in range(0, iterations, chunk_size):
        count = min(chunk_size, iterations - start)
        idx = resample_indices(seed, start, count, n)
        for row in range(count):
            take = idx[row]
            stats[start + row] = metric_fn(predictions[take], labels[take])

    alpha = (1.0 - level) / 2.0 * 100.0
    lo, hi = np.percentile(stats, [alpha, 100.0 - alpha], method="linear")
    return BootstrapCI(point=point, lo=float(lo), hi=float(hi), level=level, iterations=iterations, seed=seed)


def bootstrap_replicates(
    predictions,
    labels,
    metric_fn: Callable[[np.ndarray, np.ndarray], float],
    iterations: int,
    seed: int,
) -> np.ndarray:
    """Raw replicate metric values, for distribution-level testing."""
    predictions = np.asarray(predictions)
    labels = np.asarray(labels)
    n = predictions.shape[0]
    if n < 1:
        raise EmptyInput("bootstrap needs at least one example")
    idx = resample_indices(seed, 0, iterations, n)
    return np.array([metric_fn(predictions[row], labels[row]) for row in idx])
