"""Softmax, cross-entropy, Adam and schedule tests with frozen oracles."""
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dicomrouter import nn
from dicomrouter.nn.network import ModelParams


class TestSoftmax:
    def test_uniform_on_equal_logits(self):
        assert np.allclose(nn.softmax(np.zeros(5)), 0.2, atol=1e-15)

    def test_shift_invariance(self):
        rng = np.random.default_rng(0)
        z = rng.normal(size=5)
        for c in (1.0, -3.5, 123.0):
            assert np.abs(nn.softmax(z + c) - nn.softmax(z)).max() < 1e-12

    def test_frozen_high_precision_values(self):
        # frozen from a 30-digit evaluation: e/(e+4) and 1/(e+4)
        probs = nn.softmax(np.array([1.0, 0.0, 0.0, 0.0, 0.0]))
        assert probs[0] == pytest.approx(0.4046096751916896648210794, abs=2e-15)
        assert np.allclose(probs[1:], 0.1488475812020775837947301, atol=2e-15)

    def test_non_finite_input(self):
        with pytest.raises(nn.NonFiniteInput):
            nn.softmax(np.array([1.0, np.nan, 0.0]))

    @given(st.lists(st.floats(-1e4, 1e4), min_size=2, max_size=8), st.integers(0, 10_000))
    @settings(max_examples=300, deadline=None)
    def test_stability_properties(self, logits, _):
        z = np.array(logits)
        probs = nn.softmax(z)
        assert abs(probs.sum() - 1.0) <= 1e-9
        assert (probs > 0).all()
        # argmax agreement needs a gap representable after max subtraction;
        # sub-ulp logit differences collapse in any finite-precision softmax
        top = np.sort(z)[-2:]
        if top[1] - top[0] > 1e-9:
            assert int(np.argmax(probs)) == int(np.argmax(z))

    def test_extreme_magnitude_sweep(self):
        rng = np.random.default_rng(1)
        for _ in range(10_000):
            z = rng.uniform(-1e4, 1e4, size=5)
            probs = nn.softmax(z)
            assert abs(probs.sum() - 1.0) <= 1e-9
            assert (probs > 0).all()


class TestCrossEntropy:
    def test_confident_correct_is_near_zero(self):
        logits = np.array([[1000.0, 0.0, 0.0, 0.0, 0.0]])
        assert nn.cross_entropy_loss(logits, [0]) < 1e-6

    def test_uniform_logits_is_ln_k(self):
        loss = nn.cross_entropy_loss(np.zeros((1, 5)), [2])
        assert loss == pytest.approx(math.log(5), abs=1e-15)

    def test_sum_reduction_additivity(self):
        logits = np.array([[0.3, -1.2, 0.7, 0.0, 2.0]])
        single = nn.cross_entropy_loss(logits, [3], reduction="sum")
        double = nn.cross_entropy_loss(np.vstack([logits, logits]), [3, 3], reduction="sum")
        assert double == pytest.approx(2 * single, abs=1e-12)

    def test_mean_is_sum_over_batch(self):
        rng = np.random.default_rng(2)
        logits = rng.normal(size=(7, 5))
        labels = rng.integers(0, 5, size=7)
        s = nn.cross_entropy_loss(logits, labels, reduction="sum")
        m = nn.cross_entropy_loss(logits, labels, reduction="mean")
        assert m == pytest.approx(s / 7, abs=1e-12)

    def test_label_out_of_range(self):
        with pytest.raises(nn.LabelOutOfRange):
            nn.cross_entropy_loss(np.zeros((1, 5)), [5])

    def test_gradient_matches_softmax_minus_onehot(self):
        rng = np.random.default_rng(3)
        logits = rng.normal(size=(1, 5))
        grad = nn.cross_entropy_grad(logits, [2])
        expected = nn.softmax(logits[0]).copy()
        expected[2] -= 1.0
        assert np.allclose(grad[0], expected, atol=1e-12)

    def test_gradient_finite_difference(self):
        rng = np.random.default_rng(4)
        logits = rng.normal(size=(3, 5))
        labels = np.array([0, 4, 2])
        grad = nn.cross_entropy_grad(logits, labels)
        h = 1e-6
        for i in range(3):
            for k in range(5):
                up = logits.copy()
                up[i, k] += h
                down = logits.copy()
                down[i, k] -= h
                num = (nn.cross_entropy_loss(up, labels) - nn.cross_entropy_loss(down, labels)) / (2 * h)
                assert num == pytest.approx(grad[i, k], abs=1e-8)


class TestAdam:
    def _scalar_params(self, value=0.0):
        return ModelParams({"w": np.array([value], dtype=np.float64)})

    def test_zero_gradient_keeps_params(self):
        params = self._scalar_params(1.5)
        state = nn.AdamState.fresh(params)
        updated, new_state = nn.adam_step(params, {"w": np.zeros(1)}, state, lr=0.1)
        assert updated.tensors["w"][0] == 1.5
        assert new_state.step == 1

    def test_first_step_hand_computed(self):
        # mhat = g, vhat = g^2 on step 1, so the update is -lr/(1+eps)
        params = self._scalar_params(0.0)
        state = nn.AdamState.fresh(params)
        updated, _ = nn.adam_step(params, {"w": np.array([1.0])}, state, lr=0.1)
        assert updated.tensors["w"][0] == pytest.approx(-0.1 / (1 + 1e-8), abs=1e-15)

    def test_first_step_scale_robust(self):
        # |step| = lr * |g| / (|g| + eps), so the deviation from lr is eps/|g|
        for g in (1e-4, 1.0, 1e4, -3.7):
            params = self._scalar_params(0.0)
            state = nn.AdamState.fresh(params)
            updated, _ = nn.adam_step(params, {"w": np.array([float(g)])}, state, lr=0.01)
            step = updated.tensors["w"][0]
            assert step == pytest.approx(-0.01 * np.sign(g), rel=1e-8 / abs(g) + 1e-9)

    def test_lr_zero_is_identity(self):
        params = nn.init_params(0, dtype=np.float64)
        grads = {k: np.ones_like(v) for k, v in params.tensors.items()}
        state = nn.AdamState.fresh(params)
        updated, _ = nn.adam_step(params, grads, state, lr=0.0)
        for name in params.tensors:
            assert np.array_equal(updated.tensors[name], params.tensors[name])

    def test_inputs_not_mutated(self):
        params = self._scalar_params(2.0)
        state = nn.AdamState.fresh(params)
        nn.adam_step(params, {"w": np.array([1.0])}, state, lr=0.5)
        assert params.tensors["w"][0] == 2.0
        assert state.step == 0
        assert state.m["w"][0] == 0.0


class TestLrSchedule:
    def test_period_start_is_max(self):
        sched = nn.LrSchedule()
        assert nn.lr_at(sched, 0.0) == pytest.approx(1e-4)

    def test_period_end_is_min(self):
        sched = nn.LrSchedule()
        assert nn.lr_at(sched, 10.0) == pytest.approx(0.0, abs=1e-20)

    def test_midpoint(self):
        sched = nn.LrSchedule(lr_max=2e-4, lr_min=2e-5)
        assert nn.lr_at(sched, 5.0) == pytest.approx((2e-4 + 2e-5) / 2, rel=1e-12)

    def test_restart_and_period_growth(self):
        sched = nn.LrSchedule()  # t0=10, t_mult=2
        just_after_restart = nn.lr_at(sched, 10.0 + 1e-9)
        assert just_after_restart == pytest.approx(1e-4, rel=1e-6)
        # second period spans [10, 30]; its midpoint sits at 20
        assert nn.lr_at(sched, 20.0) == pytest.approx(5e-5, rel=1e-9)
        assert nn.lr_at(sched, 30.0) == pytest.approx(0.0, abs=1e-20)

    @given(st.floats(0, 200))
    @settings(max_examples=200, deadline=None)
    def test_bounded_by_min_max(self, progress):
        sched = nn.LrSchedule(lr_max=1e-4, lr_min=1e-6)
        lr = nn.lr_at(sched, progress)
        assert 1e-6 - 1e-18 <= lr <= 1e-4 + 1e-18
