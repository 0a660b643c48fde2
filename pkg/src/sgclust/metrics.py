"""Clustering quality scores and aggregation over repeated runs."""

from dataclasses import dataclass

import numpy as np
from scipy.optimize import linear_sum_assignment

from .errors import InputError
from .validation import check_labels


@dataclass(frozen=True)
class ScoreReport:
    """Quality and timing for one clustering run; ``error`` is ``1 - accuracy``."""

    accuracy: float
    nmi: float
    runtime_seconds: float
    solve_seconds: float = 0.0
    graph_seconds: float = 0.0
    spectral_seconds: float = 0.0

    @property
    def error(self):
        return 1.0 - self.accuracy


@dataclass(frozen=True)
class MetricStats:
    mean: float
    median: float
    min: float
    max: float


@dataclass(frozen=True)
class ScoreSummary:
    """Per-metric statistics plus mean timings over a batch of runs."""

    accuracy: MetricStats
    nmi: MetricStats
    error: MetricStats
    runtime_mean_seconds: float
    solve_mean_seconds: float
    graph_mean_seconds: float
    spectral_mean_seconds: float
    n_runs: int


def contingency_table(pred, truth):
    """Counts of samples per (predicted cluster, true class) pair."""
    pred, truth = _check_pair(pred, truth)
    _, pi = np.unique(pred, return_inverse=True)
    _, ti = np.unique(truth, return_inverse=True)
    n_pred = pi.max() + 1
    n_true = ti.max() + 1
    flat = np.bincount(pi * n_true + ti, minlength=n_pred * n_true)
    return flat.reshape(n_pred, n_true)


def clustering_accuracy(pred, truth):
    """Fraction of agreements under the best one-to-one cluster matching.

    The matching maximises total agreement over the contingency table
    (solved exactly as an assignment problem), so the score is invariant
    under any relabeling of either argument.  Returns a value in [0, 1].
    """
    table = contingency_table(pred, truth)
    rows, cols = linear_sum_assignment(table, maximize=True)
    return float(table[rows, cols].sum()) / len(pred)


def clustering_error(pred, truth):
    """``1 - clustering_accuracy``: fraction misclassified under best matching."""
    return 1.0 - clustering_accuracy(pred, truth)


def nmi(pred, truth):
    """Normalized mutual information with square-root normalization.

    ``I(pred; truth) / sqrt(H(pred) * H(truth))`` in [0, 1], symmetric in
    its arguments.  When both partitions are single-cluster (0/0) the score
    is 1; when exactly one is single-cluster it is 0.  Square-root
    normalization is a deliberate choice: max- or mean-normalized variants
    differ on skewed partitions.
    """
    table = contingency_table(pred, truth).astype(np.float64)
    n = table.sum()
    p_pred = table.sum(axis=1) / n
    p_true = table.sum(axis=0) / n
    h_pred = _entropy(p_pred)
    h_true = _entropy(p_true)
    if h_pred == 0.0 or h_true == 0.0:
        return 1.0 if h_pred == h_true else 0.0
    joint = table / n
    mask = joint > 0
    outer = p_pred[:, np.newaxis] * p_true[np.newaxis, :]
    mutual = float(np.sum(joint[mask] * np.log(joint[mask] / outer[mask])))
    return float(np.clip(mutual / np.sqrt(h_pred * h_true), 0.0, 1.0))


def aggregate(reports):
    """Mean/median/min/max of each metric and mean timings over runs."""
    reports = list(reports)
    if not reports:
        raise InputError("cannot aggregate an empty sequence of reports")

    def stats(values):
        values = np.asarray(values, dtype=np.float64)
        return MetricStats(
            mean=float(values.mean()),
            median=float(np.median(values)),
            min=float(values.min()),
            max=float(values.max()),
        )

    return ScoreSummary(
        accuracy=stats([r.accuracy for r in reports]),
        nmi=stats([r.nmi for r in reports]),
        error=stats([r.error for r in reports]),
        runtime_mean_seconds=float(np.mean([r.runtime_seconds for r in reports])),
        solve_mean_seconds=float(np.mean([r.solve_seconds for r in reports])),
        graph_mean_seconds=float(np.mean([r.graph_seconds for r in reports])),
        spectral_mean_seconds=float(np.mean([r.spectral_seconds for r in reports])),
        n_runs=len(reports),
    )


def _check_pair(pred, truth):
    pred = check_labels(pred, name="predicted labels")
    truth = check_labels(truth, name="ground-truth labels")
    if pred.shape != truth.shape:
        raise InputError(
            f"label length mismatch: {pred.shape[0]} predicted vs {truth.shape[0]} true"
        )
    return pred, truth


def _entropy(p):
    p = p[p > 0]
    return float(-np.sum(p * np.log(p)))
