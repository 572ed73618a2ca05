"""Bootstrap CI tests: degenerate inputs, determinism, and an exhaustive
enumeration oracle at N=3."""
from itertools import product

import numpy as np
import pytest

from dicomrouter.metrics import EmptyInput, bootstrap_ci, bootstrap_replicates
from dicomrouter.nn.functional import accuracy


class TestBootstrapCI:
    def test_all_correct_degenerate_interval(self):
        preds = np.array([0, 1, 2, 3, 4, 2, 2])
        ci = bootstrap_ci(preds, preds, accuracy, iterations=500, seed=1)
        assert (ci.point, ci.lo, ci.hi) == (1.0, 1.0, 1.0)

    def test_same_seed_identical(self):
        rng = np.random.default_rng(0)
        labels = rng.integers(0, 5, 40)
        preds = rng.integers(0, 5, 40)
        a = bootstrap_ci(preds, labels, accuracy, iterations=2000, seed=7)
        b = bootstrap_ci(preds, labels, accuracy, iterations=2000, seed=7)
        assert (a.lo, a.hi) == (b.lo, b.hi)

    def test_different_seed_gives_different_streams(self):
        # CI endpoints can coincide across seeds (accuracy is discrete);
        # the replicate streams themselves must not
        rng = np.random.default_rng(1)
        labels = rng.integers(0, 5, 40)
        preds = np.where(rng.random(40) < 0.7, labels, rng.integers(0, 5, 40))
        a = bootstrap_replicates(preds, labels, accuracy, iterations=200, seed=1)
        b = bootstrap_replicates(preds, labels, accuracy, iterations=200, seed=2)
        assert not np.array_equal(a, b)

    def test_chunking_invariant(self):
        # replicate streams depend only on (seed, index), so the chunk size
        # must not change the result
        rng = np.random.default_rng(2)
        labels = rng.integers(0, 5, 25)
        preds = np.where(rng.random(25) < 0.6, labels, rng.integers(0, 5, 25))
        a = bootstrap_ci(preds, labels, accuracy, iterations=1000, seed=3, chunk_size=1000)
        b = bootstrap_ci(preds, labels, accuracy, iterations=1000, seed=3, chunk_size=17)
        assert (a.lo, a.hi) == (b.lo, b.hi)

    def test_point_within_interval_on_observed_sample(self):
        rng = np.random.default_rng(3)
        for trial in range(10):
            n = int(rng.integers(10, 60))
            labels = rng.integers(0, 5, n)
            preds = np.where(rng.random(n) < 0.7, labels, rng.integers(0, 5, n))
            ci = bootstrap_ci(preds, labels, accuracy, iterations=1000, seed=trial)
            assert ci.lo <= ci.point <= ci.hi
            assert ci.lo <= ci.hi

    def test_empty_input(self):
        with pytest.raises(EmptyInput):
            bootstrap_ci(np.array([]), np.array([]), accuracy)

    def test_zero_iterations_disallowed(self):
        with pytest.raises(ValueError):
            bootstrap_ci(np.array([1]), np.array([1]), accuracy, iterations=0)

    def test_n3_exhaustive_enumeration(self):
        # one error out of three: a resample draws each index uniformly,
        # so #correct ~ Binomial(3, 2/3); enumerate all 27 ordered draws
        labels = np.array([0, 1, 2])
        preds = np.array([0, 1, 4])  # one error
        correct = (preds == labels).astype(int)

        exact = {}
        for draw in product(range(3), repeat=3):
            acc = sum(correct[i] for i in draw) / 3
            exact[round(acc, 6)] = exact.get(round(acc, 6), 0) + 1 / 27

        reps = bootstrap_replicates(preds, labels, accuracy, iterations=10_000, seed=11)
        for value, probability in exact.items():
            freq = float(np.mean(np.round(reps, 6) == value))
            assert freq == pytest.approx(probability, abs=0.02)

    def test_percentile_linear_interpolation(self):
        # tiny, fully determined case: percentile must equal numpy's
        # linear closest-rank interpolation over the replicate values
        labels = np.array([0, 1, 2, 3])
        preds = np.array([0, 1, 2, 0])
        reps = bootstrap_replicates(preds, labels, accuracy, iterations=200, seed=5)
        ci = bootstrap_ci(preds, labels, accuracy, iterations=200, seed=5)
        lo, hi = np.percentile(reps, [2.5, 97.5], method="linear")
        assert (ci.lo, ci.hi) == (float(lo), float(hi))
