"""Independent reference implementations used to cross-check the library.

Everything here deliberately takes a different route from the package code:
brute-force enumeration, scalar grid searches, per-column dense solves, and
plain-loop entropy sums.  Slow but unambiguous.
"""

import itertools
import math

import numpy as np


def brute_force_accuracy(pred, truth):
    """Max agreement fraction over every injective relabeling of pred.

    Feasible only for small label counts; used to validate the assignment
    based matcher.
    """
    pred = np.asarray(pred)
    truth = np.asarray(truth)
    pred_ids = np.unique(pred)
    truth_ids = list(np.unique(truth))
    # pad the truth side so every pred label can map somewhere distinct
    while len(truth_ids) < len(pred_ids):
        truth_ids.append(max(truth_ids) + 1)
    best = 0
    for mapping in itertools.permutations(truth_ids, len(pred_ids)):
        table = dict(zip(pred_ids, mapping))
        relabeled = np.array([table[p] for p in pred])
        best = max(best, int(np.sum(relabeled == truth)))
    return best / len(pred)


def grid_min_fssc(lam, tau, step=1e-6):
    """Scalar grid argmin of (tau/2)*(1-d)^2*lam^2 + d^2/2 over d in [0, 1)."""
    grid = np.arange(0.0, 1.0, step)
    objective = 0.5 * tau * (1.0 - grid) ** 2 * lam**2 + 0.5 * grid**2
    return float(grid[np.argmin(objective)])


def grid_min_lrsc(lam, tau, step=1e-6):
    """Scalar grid argmin of |d| + (tau/2)*(1-d)^2*lam^2 over d in [0, 1)."""
    grid = np.arange(0.0, 1.0, step)
    objective = np.abs(grid) + 0.5 * tau * (1.0 - grid) ** 2 * lam**2
    return float(grid[np.argmin(objective)])


def grid_min_lrsc_many(lams, tau, step=1e-6):
    """grid_min_lrsc for a whole spectrum at once (same grid, shared scan)."""
    grid = np.arange(0.0, 1.0, step)
    lams = np.asarray(lams, dtype=np.float64)
    objective = grid[:, None] + 0.5 * tau * (1.0 - grid[:, None]) ** 2 * lams[None, :] ** 2
    return grid[np.argmin(objective, axis=0)]


def ridge_coefficients(Y, tau):
    """Dense normal-equations solve of (tau*Y'Y + I) C = tau*Y'Y."""
    gram = tau * (Y.T @ Y)
    return np.linalg.solve(gram + np.eye(Y.shape[1]), gram)


def l2graph_column(Y, i, tau):
    """Dense solve for one self-representation column: data with column i
    zeroed, ridge weight 2*tau on the identity."""
    Yi = Y.copy()
    Yi[:, i] = 0.0
    lhs = Yi.T @ Yi + 2.0 * tau * np.eye(Y.shape[1])
    return np.linalg.solve(lhs, Yi.T @ Y[:, i])


def fssc_objective(Y, C, tau):
    """tau/2 * ||Y - YC||_F^2 + 1/2 * ||C||_F^2."""
    return 0.5 * tau * np.linalg.norm(Y - Y @ C) ** 2 + 0.5 * np.linalg.norm(C) ** 2


def lrsc_objective(Y, C, tau):
    """||C||_* + tau/2 * ||Y - YC||_F^2."""
    nuclear = np.linalg.norm(C, ord="nuc")
    return nuclear + 0.5 * tau * np.linalg.norm(Y - Y @ C) ** 2


def l2graph_column_objective(Y, i, c, tau):
    """1/2 * ||y_i - Y_i c||^2 + tau * ||c||^2 (column i of the data zeroed)."""
    Yi = Y.copy()
    Yi[:, i] = 0.0
    residual = Y[:, i] - Yi @ c
    return 0.5 * residual @ residual + tau * (c @ c)


def trace_lower_bound(X, Z):
    """Sum of sigma_i(X) * sigma_{n-i+1}(Z), singular values descending."""
    sx = np.linalg.svd(X, compute_uv=False)
    sz = np.linalg.svd(Z, compute_uv=False)
    return float(np.sum(sx * sz[::-1]))


def loop_nmi(pred, truth):
    """Mutual information / sqrt(entropy product) via explicit loops."""
    pred = list(pred)
    truth = list(truth)
    n = len(pred)
    pairs = {}
    p_counts = {}
    t_counts = {}
    for a, b in zip(pred, truth):
        pairs[(a, b)] = pairs.get((a, b), 0) + 1
        p_counts[a] = p_counts.get(a, 0) + 1
        t_counts[b] = t_counts.get(b, 0) + 1
    mutual = 0.0
    for (a, b), count in pairs.items():
        mutual += (count / n) * math.log(count * n / (p_counts[a] * t_counts[b]))
    h_pred = -sum((c / n) * math.log(c / n) for c in p_counts.values())
    h_truth = -sum((c / n) * math.log(c / n) for c in t_counts.values())
    if h_pred == 0.0 or h_truth == 0.0:
        return 1.0 if h_pred == h_truth else 0.0
    return mutual / math.sqrt(h_pred * h_truth)


def random_psd(rng, n, scale=1.0):
    """Random symmetric positive semidefinite matrix."""
    A = rng.standard_normal((n, n)) * scale
    return A @ A.T


def all_partitions(n, max_labels):
    """Every partition of n items into at most max_labels clusters, as
    canonical label tuples (restricted growth strings, no duplicates)."""

    def extend(prefix, used):
        if len(prefix) == n:
            yield tuple(prefix)
            return
        for v in range(min(used + 1, max_labels)):
            yield from extend(prefix + [v], max(used, v + 1))

    if n >= 1:
        yield from extend([0], 1)


def all_contingency_tables(n, shape=(3, 3)):
    """Every nonnegative integer matrix of the given shape summing to n.

    Accuracy and NMI depend on a label pair only through this table, so
    enumerating tables covers every pred/truth pair exhaustively.
    """
    cells = shape[0] * shape[1]

    def fill(remaining, left):
        if left == 1:
            yield (remaining,)
            return
        for v in range(remaining + 1):
            for rest in fill(remaining - v, left - 1):
                yield (v,) + rest

    for flat in fill(n, cells):
        yield np.array(flat, dtype=int).reshape(shape)


def labels_from_table(table):
    """A canonical (pred, truth) pair realizing the contingency table."""
    pred = []
    truth = []
    for i in range(table.shape[0]):
        for j in range(table.shape[1]):
            pred.extend([i] * table[i, j])
            truth.extend([j] * table[i, j])
    return np.array(pred, dtype=np.int64), np.array(truth, dtype=np.int64)
