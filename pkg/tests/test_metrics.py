"""Tests for accuracy, NMI, and aggregation against brute-force oracles."""

import numpy as np
import pytest

from sgclust.errors import InputError
from sgclust.metrics import (
    ScoreReport,
    aggregate,
    clustering_accuracy,
    clustering_error,
    contingency_table,
    nmi,
)

from oracles import all_partitions, brute_force_accuracy, loop_nmi

# hand-computed entropy oracle for pred=(0,0,1,1,2,2) vs truth=(0,0,0,1,1,1):
# I = (2/3)ln2, H = ln3 and ln2, so NMI = (2/3)ln2 / sqrt(ln3 * ln2)
NMI_HAND_VALUE = 0.5295405780575617


class TestContingencyTable:
    def test_counts(self):
        table = contingency_table([0, 0, 1, 1, 2, 2], [0, 0, 0, 1, 1, 1])
        np.testing.assert_array_equal(table, [[2, 0], [1, 1], [0, 2]])

    def test_sparse_label_values_are_compacted(self):
        table = contingency_table([5, 5, 9], [2, 7, 7])
        np.testing.assert_array_equal(table, [[1, 1], [0, 1]])


class TestClusteringAccuracy:
    def test_label_permutation_scores_one(self):
        assert clustering_accuracy([0, 0, 1, 1], [1, 1, 0, 0]) == 1.0

    def test_alternating_labels(self):
        pred = [0, 1, 0, 1]
        truth = [0, 0, 1, 1]
        assert clustering_accuracy(pred, truth) == 0.5
        assert clustering_accuracy(pred, truth) == brute_force_accuracy(pred, truth)

    def test_identical_labels(self):
        assert clustering_accuracy([0, 1, 2, 1], [0, 1, 2, 1]) == 1.0

    def test_invariant_under_relabeling(self):
        rng = np.random.default_rng(0)
        truth = rng.integers(0, 3, size=40)
        pred = rng.integers(0, 3, size=40)
        base = clustering_accuracy(pred, truth)
        for _ in range(10):
            p_map = rng.permutation(3)
            t_map = rng.permutation(3)
            assert clustering_accuracy(p_map[pred], t_map[truth]) == base

    def test_constant_prediction_scores_majority_fraction(self):
        truth = np.array([0, 0, 0, 1, 1, 2])
        pred = np.zeros(6, dtype=int)
        assert clustering_accuracy(pred, truth) == pytest.approx(3 / 6)

    def test_matches_brute_force_exhaustively_small_n(self):
        # every pair of partitions with up to 3 clusters, n in {2, ..., 5}
        for n in range(2, 6):
            partitions = list(all_partitions(n, 3))
            for pred in partitions:
                for truth in partitions:
                    assert clustering_accuracy(pred, truth) == pytest.approx(
                        brute_force_accuracy(pred, truth)
                    ), (pred, truth)

    def test_matches_brute_force_sampled_larger_n(self):
        rng = np.random.default_rng(1)
        for n in (6, 7, 8):
            for _ in range(100):
                pred = rng.integers(0, 3, size=n)
                truth = rng.integers(0, 3, size=n)
                assert clustering_accuracy(pred, truth) == pytest.approx(
                    brute_force_accuracy(pred, truth)
                )

    def test_error_is_complement(self):
        pred = [0, 1, 0, 1]
        truth = [0, 0, 1, 1]
        assert clustering_error(pred, truth) == pytest.approx(
            1.0 - clustering_accuracy(pred, truth)
        )

    def test_length_mismatch(self):
        with pytest.raises(InputError):
            clustering_accuracy([0, 1], [0, 1, 1])

    def test_rejects_non_integer_labels(self):
        with pytest.raises(InputError):
            clustering_accuracy([0.5, 1.0], [0, 1])


class TestNmi:
    def test_identical_partitions(self):
        assert nmi([0, 1, 2, 0], [0, 1, 2, 0]) == pytest.approx(1.0)

    def test_constant_prediction_has_zero_information(self):
        assert nmi([0, 0, 0, 0], [0, 0, 1, 1]) == 0.0

    def test_both_single_cluster(self):
        assert nmi([0, 0, 0], [0, 0, 0]) == 1.0

    def test_hand_computed_example(self):
        pred = (0, 0, 1, 1, 2, 2)
        truth = (0, 0, 0, 1, 1, 1)
        assert nmi(pred, truth) == pytest.approx(NMI_HAND_VALUE, abs=1e-12)
        assert loop_nmi(pred, truth) == pytest.approx(NMI_HAND_VALUE, abs=1e-12)

    def test_matches_loop_oracle_on_random_pairs(self):
        rng = np.random.default_rng(2)
        for _ in range(30):
            n = int(rng.integers(2, 40))
            pred = rng.integers(0, 4, size=n)
            truth = rng.integers(0, 3, size=n)
            assert nmi(pred, truth) == pytest.approx(loop_nmi(pred, truth), abs=1e-12)

    def test_symmetric(self):
        rng = np.random.default_rng(3)
        for _ in range(20):
            pred = rng.integers(0, 4, size=25)
            truth = rng.integers(0, 3, size=25)
            assert abs(nmi(pred, truth) - nmi(truth, pred)) <= 1e-12

    def test_range(self):
        rng = np.random.default_rng(4)
        for _ in range(20):
            pred = rng.integers(0, 5, size=30)
            truth = rng.integers(0, 5, size=30)
            value = nmi(pred, truth)
            assert 0.0 <= value <= 1.0


class TestAggregate:
    def test_single_report(self):
        report = ScoreReport(accuracy=0.8, nmi=0.7, runtime_seconds=0.5)
        summary = aggregate([report])
        assert summary.accuracy.mean == summary.accuracy.median == 0.8
        assert summary.nmi.min == summary.nmi.max == 0.7
        assert summary.error.mean == pytest.approx(0.2)
        assert summary.runtime_mean_seconds == 0.5
        assert summary.n_runs == 1

    def test_mean_and_median(self):
        reports = [
            ScoreReport(accuracy=a, nmi=a, runtime_seconds=t)
            for a, t in ((0.1, 1.0), (0.2, 2.0), (0.3, 3.0))
        ]
        summary = aggregate(reports)
        assert summary.accuracy.mean == pytest.approx(0.2)
        assert summary.accuracy.median == pytest.approx(0.2)
        assert summary.runtime_mean_seconds == pytest.approx(2.0)
        assert summary.error.mean == pytest.approx(0.8)

    def test_matches_recomputation_on_twenty_runs(self):
        rng = np.random.default_rng(5)
        accs = rng.uniform(0.5, 1.0, size=20)
        reports = [
            ScoreReport(accuracy=float(a), nmi=float(a) / 2, runtime_seconds=0.1)
            for a in accs
        ]
        summary = aggregate(reports)
        assert summary.accuracy.mean == pytest.approx(float(np.mean(accs)))
        assert summary.accuracy.median == pytest.approx(float(np.median(accs)))
        assert summary.accuracy.min == pytest.approx(float(accs.min()))
        assert summary.accuracy.max == pytest.approx(float(accs.max()))
        assert summary.accuracy.min <= summary.accuracy.mean <= summary.accuracy.max

    def test_empty_rejected(self):
        with pytest.raises(InputError):
            aggregate([])

    def test_stage_timing_means(self):
        reports = [
            ScoreReport(accuracy=1.0, nmi=1.0, runtime_seconds=1.0,
                        solve_seconds=s, graph_seconds=0.1, spectral_seconds=0.2)
            for s in (0.2, 0.4)
        ]
        summary = aggregate(reports)
        assert summary.solve_mean_seconds == pytest.approx(0.3)
        assert summary.graph_mean_seconds == pytest.approx(0.1)
        assert summary.spectral_mean_seconds == pytest.approx(0.2)
