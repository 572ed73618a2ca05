"""Stratified split tests, including the published per-class counts."""
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dicomrouter.metrics import ClassTooSmall, SplitSpec, stratified_split

CLASS_SIZES = {0: 1179, 1: 3292, 2: 6218, 3: 2228, 4: 3176}
EXPECTED_TRAIN = {0: 825, 1: 2304, 2: 4352, 3: 1559, 4: 2223}
EXPECTED_VAL = {0: 176, 1: 493, 2: 932, 3: 334, 4: 476}
EXPECTED_TEST = {0: 178, 1: 495, 2: 934, 3: 335, 4: 477}


def _labels_from_sizes(sizes):
    return np.concatenate([np.full(n, cls, dtype=np.intp) for cls, n in sizes.items()])


class TestPublishedCounts:
    @pytest.mark.parametrize("seed", [0, 1, 2, 42, 20210811])
    def test_per_class_counts_and_totals(self, seed):
        labels = _labels_from_sizes(CLASS_SIZES)
        train, val, test = stratified_split(labels, SplitSpec(seed=seed))
        for cls in CLASS_SIZES:
            assert int((labels[train] == cls).sum()) == EXPECTED_TRAIN[cls]
            assert int((labels[val] == cls).sum()) == EXPECTED_VAL[cls]
            assert int((labels[test] == cls).sum()) == EXPECTED_TEST[cls]
        assert (len(train), len(val), len(test)) == (11_263, 2_411, 2_419)

    def test_membership_depends_on_seed(self):
        labels = _labels_from_sizes(CLASS_SIZES)
        a, _, _ = stratified_split(labels, SplitSpec(seed=1))
        b, _, _ = stratified_split(labels, SplitSpec(seed=2))
        assert set(a.tolist()) != set(b.tolist())

    def test_same_seed_same_membership(self):
        labels = _labels_from_sizes(CLASS_SIZES)
        a, av, at = stratified_split(labels, SplitSpec(seed=3))
        b, bv, bt = stratified_split(labels, SplitSpec(seed=3))
        assert np.array_equal(a, b) and np.array_equal(av, bv) and np.array_equal(at, bt)


class TestFloorRule:
    def test_ten_per_class(self):
        labels = _labels_from_sizes({k: 10 for k in range(5)})
        train, val, test = stratified_split(labels, SplitSpec(seed=0))
        for cls in range(5):
            assert int((labels[train] == cls).sum()) == 7
            assert int((labels[val] == cls).sum()) == 1
            assert int((labels[test] == cls).sum()) == 2

    def test_class_too_small(self):
        labels = np.array([0, 0, 1, 1, 1])
        with pytest.raises(ClassTooSmall):
            stratified_split(labels, SplitSpec(seed=0))


class TestPartitionProperty:
    @given(
        sizes=st.lists(st.integers(3, 40), min_size=1, max_size=5),
        seed=st.integers(0, 2**31 - 1),
    )
    @settings(max_examples=80, deadline=None)
    def test_disjoint_and_exhaustive(self, sizes, seed):
        labels = np.concatenate([np.full(n, cls) for cls, n in enumerate(sizes)])
        train, val, test = stratified_split(labels, SplitSpec(seed=seed))
        union = np.concatenate([train, val, test])
        assert len(union) == len(labels)
        assert len(np.unique(union)) == len(labels)
        assert set(union.tolist()) == set(range(len(labels)))

    def test_invalid_ratios(self):
        with pytest.raises(ValueError):
            SplitSpec(ratios=(0.5, 0.1, 0.1))
