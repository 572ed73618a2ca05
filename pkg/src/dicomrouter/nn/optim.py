"""Adam with bias correction and cosine annealing with warm restarts."""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .network import ModelParams


@dataclass
class AdamState:
    step: int
    m: dict[str, np.ndarray]
    v: dict[str, np.ndarray]
    beta1: float = 0.9
    beta2: float = 0.999
    eps: float = 1e-8

    @classmethod
    def fresh(cls, params: ModelParams) -> "AdamState":
        return cls(
            step=0,
            m={k: np.zeros_like(t) for k, t in params.tensors.items()},
            v={k: np.zeros_like(t) for k, t in params.tensors.items()},
        )


def adam_step(
    params: ModelParams,
    grads: dict[str, np.ndarray],
    state: AdamState,
    lr: float,
) -> tuple[ModelParams, AdamState]:
    """One optimizer step. Returns updated copies; inputs stay untouched.

    t <- t+1; m <- b1*m + (1-b1)*g; v <- b2*v + (1-b2)*g^2;
    parameters move by -lr * mhat / (sqrt(vhat) + eps) with the usual
    1/(1-b^t) bias corrections.
    """
    t = state.step + 1
    bc1 = 1.0 - state.beta1**t
    bc2 = 1.0 - state.beta2**t

    new_tensors: dict[str, np.ndarray] = {}
    new_m: dict[str, np.ndarray] = {}
    new_v: dict[str, np.ndarray] = {}
    for name, theta in params.tensors.items():
        g = grads[name]
        m = state.beta1 * state.m[name] + (1.0 - state.beta1) * g
        v = state.beta2 * state.v[name] + (1.0 - state.beta2) * (g * g)
        m_hat = m / bc1
        v_hat = v / bc2
        new_tensors[name] = (theta - lr * m_hat / (np.sqrt(v_hat) + state.eps)).astype(theta.dtype)
        new_m[name] = m.astype(theta.dtype)
        new_v[name] = v.astype(theta.dtype)

    new_state = AdamState(step=t, m=new_m, v=new_v, beta1=state.beta1, beta2=state.beta2, eps=state.eps)
    return ModelParams(new_tensors, arch=params.arch), new_state


@dataclass(frozen=True)
class LrSchedule:
    """Cosine annealing with warm restarts: the rate decays from lr_max to
    lr_min over a period, then snaps back; each period is t_mult times the
    previous one."""

    lr_max: float = 1e-4
    lr_min: float = 0.0
    t0: float = 10.0
    t_mult: float = 2.0

    def __post_init__(self) -> None:
        if self.t0 <= 0 or self.t_mult < 1.0:
            raise ValueError("t0 must be positive and t_mult >= 1")
        if self.lr_min > self.lr_max:
            raise ValueError("lr_min exceeds lr_max")


def lr_at(schedule: LrSchedule, epoch_progress: float) -> float:
    """Learning rate at a (possibly fractional) epoch count >= 0.

    The exact end of a period reports lr_min; the restart takes effect just
    after it.
    """
    if epoch_progress < 0:
        raise ValueError("epoch_progress must be >= 0")
    start = 0.0
    period = schedule.t0
    while epoch_progress > start + period:
        start += period
        period *= schedule.t_mult
    t_cur = epoch_progress - start
    cos_term = math.cos(math.pi * t_cur / period)
    return schedule.lr_min + 0.5 * (schedule.lr_max - schedule.lr_min) * (1.0 + cos_term)
