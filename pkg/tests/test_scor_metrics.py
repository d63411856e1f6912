from __future__ import annotations

import math
import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from matagent.scor import (
    DegenerateTruth,
    EmptyInput,
    TrialSet,
    classification_metrics,
    cop_of,
    mae,
    precision_of,
    r2,
    scor_of,
)

from .metric_oracle import (
    oracle_accuracy,
    oracle_f1_macro,
    oracle_mae,
    oracle_precision,
    oracle_r2,
    oracle_scor,
)


def trials(values, n_trials):
    """TrialSet with the given valid values padded by invalid slots."""
    extracted = list(values) + [None] * (n_trials - len(values))
    return TrialSet(
        query_id="q",
        n_trials=n_trials,
        raw_responses=tuple(str(v) for v in extracted),
        extracted=tuple(extracted),
    )


class TestPrecision:
    def test_zero_variance(self):
        assert precision_of([5.0, 5.0, 5.0]) == 0.0

    def test_three_values(self):
        p = precision_of([10, 12, 14], 3)
        assert p == pytest.approx(2 / math.sqrt(3), abs=1e-12)
        assert p == pytest.approx(1.154700, abs=1e-6)

    def test_single_value_convention(self):
        assert precision_of([7.2]) == 0.0

    def test_empty_rejected(self):
        with pytest.raises(EmptyInput):
            precision_of([])


class TestCop:
    def test_zero(self):
        assert cop_of(0.0) == 1.0

    def test_example_value(self):
        assert cop_of(2 / math.sqrt(3)) == pytest.approx(0.315152, abs=1e-6)

    def test_large_precision_stays_positive(self):
        v = cop_of(50.0)
        assert 0 < v < 1e-21
        assert v == pytest.approx(1.93e-22, rel=1e-2)

    def test_negative_rejected(self):
        with pytest.raises(ValueError):
            cop_of(-0.1)


class TestScor:
    def test_all_identical(self):
        score = scor_of(trials([4.2] * 5, 5))
        assert score.scor == 1.0
        assert score.cop == 1.0
        assert score.confidence == 1.0

    def test_partial_validity(self):
        score = scor_of(trials([10.0, 12.0, 14.0], 5))
        assert score.confidence == pytest.approx(0.6)
        assert score.scor == pytest.approx(0.189091, abs=1e-6)
        assert score.scor == score.cop * score.confidence

    def test_no_valid_responses(self):
        score = scor_of(trials([], 5))
        assert score.scor == 0.0
        assert score.precision is None
        assert score.cop is None
        assert score.confidence == 0.0

    def test_categorical_unanimous(self):
        score = scor_of(trials(["FM"] * 4, 5))
        assert score.cop == 1.0
        assert score.scor == pytest.approx(0.8)

    def test_categorical_split(self):
        score = scor_of(trials(["FM", "FM", "AFM", "NM"], 4))
        assert score.confidence == 1.0
        assert score.cop == pytest.approx(math.exp(-(0.5 / 2)))


class TestScorOracle:
    def test_matches_oracle_on_randomized_trialsets(self):
        rng = random.Random(7)
        for _ in range(1000):
            n_trials = rng.randint(1, 10)
            n_valid = rng.randint(0, n_trials)
            values = [rng.uniform(-100, 100) for _ in range(n_valid)]
            got = scor_of(trials(values, n_trials))
            e_prec, e_cop, e_conf, e_scor = oracle_scor(values, n_trials)
            assert got.confidence == pytest.approx(e_conf, abs=1e-12)
            assert got.scor == pytest.approx(e_scor, abs=1e-12)
            if n_valid:
                assert got.precision == pytest.approx(e_prec, abs=1e-12)
                assert got.cop == pytest.approx(e_cop, abs=1e-12)
                assert got.precision == pytest.approx(oracle_precision(values), abs=1e-12)
            else:
                assert got.precision is None and got.cop is None

    @given(
        st.lists(st.floats(-1e4, 1e4), min_size=0, max_size=10),
        st.integers(min_value=0, max_value=10),
    )
    def test_bounds_property(self, values, extra_invalid):
        n_trials = max(1, len(values) + extra_invalid)
        score = scor_of(trials(values[: n_trials], n_trials))
        assert 0.0 <= score.scor <= 1.0
        assert 0.0 <= score.confidence <= 1.0
        if score.cop is not None:
            assert 0.0 < score.cop <= 1.0
            assert score.scor == score.cop * score.confidence
        else:
            assert score.scor == 0.0

    def test_trial_order_irrelevant(self):
        a = scor_of(trials([3.0, 4.0, 5.0], 5))
        b = scor_of(trials([5.0, 3.0, 4.0], 5))
        assert a.scor == pytest.approx(b.scor, abs=1e-15)

    def test_monotone_in_valid_count_at_fixed_variance(self):
        # Duplicating the value multiset keeps the sample std fixed while
        # raising n, so both precision and confidence move scor upward.
        base = [10.0, 12.0, 14.0]
        n = 12
        s1 = scor_of(trials(base * 2, n))
        s2 = scor_of(trials(base * 3, n))
        s3 = scor_of(trials(base * 4, n))
        assert s1.scor < s2.scor < s3.scor


class TestMae:
    def test_identity(self):
        assert mae([1.0, 2.0], [1.0, 2.0]) == 0.0

    def test_example(self):
        assert mae([1, 2, 3], [1, 1, 1]) == pytest.approx(1.0)

    def test_single_pair(self):
        assert mae([41.2], [40.0]) == pytest.approx(1.2)

    def test_empty(self):
        with pytest.raises(EmptyInput):
            mae([], [])

    def test_matches_oracle(self):
        rng = random.Random(11)
        for _ in range(200):
            n = rng.randint(1, 20)
            pred = [rng.uniform(-50, 50) for _ in range(n)]
            truth = [rng.uniform(-50, 50) for _ in range(n)]
            assert mae(pred, truth) == pytest.approx(oracle_mae(pred, truth), abs=1e-12)

    def test_permutation_invariant(self):
        pred, truth = [1.0, 5.0, -2.0], [0.0, 4.0, 1.0]
        paired = list(zip(pred, truth))
        shuffled = [paired[2], paired[0], paired[1]]
        assert mae(*map(list, zip(*shuffled))) == pytest.approx(mae(pred, truth), abs=1e-15)


class TestClassification:
    def test_perfect(self):
        r = classification_metrics(["A", "B"], ["A", "B"])
        assert r.accuracy == 1.0
        assert r.f1_macro == 1.0

    def test_spec_example(self):
        r = classification_metrics(["A", "B", "B", "C"], ["A", "A", "B", "C"])
        assert r.accuracy == 0.75
        assert r.f1_macro == pytest.approx(0.7778, abs=1e-4)

    def test_all_wrong_single_class(self):
        r = classification_metrics(["C", "C", "C"], ["A", "B", "A"])
        assert r.accuracy == 0.0

    def test_confusion_row_sums_are_truth_counts(self):
        rng = random.Random(3)
        labels = ["FM", "FiM", "AFM", "NM"]
        truth = [rng.choice(labels) for _ in range(60)]
        pred = [rng.choice(labels) for _ in range(60)]
        r = classification_metrics(pred, truth, canonical_labels=labels)
        for k, lab in enumerate(r.labels):
            assert sum(r.confusion[k]) == truth.count(lab)

    def test_matches_oracle(self):
        rng = random.Random(5)
        for _ in range(200):
            n = rng.randint(1, 30)
            labels = ["a", "b", "c", "d"][: rng.randint(1, 4)]
            pred = [rng.choice(labels) for _ in range(n)]
            truth = [rng.choice(labels) for _ in range(n)]
            r = classification_metrics(pred, truth)
            assert r.accuracy == pytest.approx(oracle_accuracy(pred, truth), abs=1e-12)
            assert r.f1_macro == pytest.approx(oracle_f1_macro(pred, truth), abs=1e-12)

    def test_empty(self):
        with pytest.raises(EmptyInput):
            classification_metrics([], [])


class TestR2:
    def test_identity(self):
        assert r2([1.0, 2.0, 3.0], [1.0, 2.0, 3.0]) == 1.0

    def test_constant_mean_prediction(self):
        truth = [1.0, 2.0, 3.0]
        assert r2([2.0, 2.0, 2.0], truth) == pytest.approx(0.0, abs=1e-15)

    def test_spec_example(self):
        assert r2([0.0, 0.0], [-1.0, 1.0]) == pytest.approx(0.0, abs=1e-15)

    def test_degenerate_truth(self):
        with pytest.raises(DegenerateTruth):
            r2([1.0, 2.0], [3.0, 3.0])

    def test_matches_oracle(self):
        rng = random.Random(13)
        for _ in range(200):
            n = rng.randint(2, 25)
            truth = [rng.uniform(-10, 10) for _ in range(n)]
            if max(truth) == min(truth):
                continue
            pred = [rng.uniform(-10, 10) for _ in range(n)]
            assert r2(pred, truth) == pytest.approx(oracle_r2(pred, truth), abs=1e-12)
