"""Affinity graph construction from representation coefficients."""

import warnings
from dataclasses import dataclass

import numpy as np

from .errors import InputError, ParameterError
from .validation import check_square


class IsolatedNodesWarning(UserWarning):
    """Some nodes have no edges; spectral clustering will treat them as singletons."""


@dataclass(frozen=True)
class AffinityGraph:
    """Symmetric nonnegative edge weights plus a record of edgeless nodes.

    ``isolated_nodes`` lists the indices whose row and column are entirely
    zero (possible only when the corresponding data column was zero).
    """

    values: np.ndarray
    isolated_nodes: np.ndarray

    @property
    def n_nodes(self):
        return self.values.shape[0]


def sparsify_topk(C, k, zero_diagonal=True):
    """Keep the ``k`` largest absolute coefficients in every column.

    Absolute values are taken first, so the output is nonnegative.  With
    ``zero_diagonal`` the self-coefficient is removed before selection
    (self-similarity carries no clustering information and would waste one
    of the ``k`` slots), which caps ``k`` at ``n - 1``.  Ties at the k-th
    magnitude are resolved toward the lowest row index, so the output is
    identical across platforms and parallel schedules.

    Parameters
    ----------
    C : array-like, shape (n, n)
    k : int
        Coefficients retained per column, ``1 <= k <= n - 1`` (or ``n``
        when ``zero_diagonal`` is off).
    zero_diagonal : bool

    Returns
    -------
    ndarray, shape (n, n)
        Nonnegative, at most ``k`` nonzeros per column.
    """
    C = check_square(C)
    n = C.shape[0]
    limit = n - 1 if zero_diagonal else n
    if not isinstance(k, (int, np.integer)) or not 1 <= k <= limit:
        raise ParameterError(
            f"k must be an integer in [1, {limit}] for n={n} "
            f"(zero_diagonal={zero_diagonal}), got {k!r}"
        )
    A = np.abs(C)
    if zero_diagonal:
        np.fill_diagonal(A, 0.0)
    if k >= n:
        return A
    # stable sort on negated magnitudes: equal values keep ascending row order
    order = np.argsort(-A, axis=0, kind="stable")
    keep = np.zeros(A.shape, dtype=bool)
    np.put_along_axis(keep, order[:k, :], True, axis=0)
    A[~keep] = 0.0
    return A


def build_affinity(C_hat):
    """Symmetrise nonnegative sparse coefficients into graph weights.

    ``W = C_hat + C_hat.T``; on nonnegative input this equals
    ``|C_hat| + |C_hat|.T``.  Nodes whose row and column are entirely zero
    are recorded on the result and reported via IsolatedNodesWarning.

    Returns
    -------
    AffinityGraph
    """
    C_hat = check_square(C_hat, name="sparsified coefficient matrix")
    if np.any(C_hat < 0):
        raise InputError("coefficients must be nonnegative; run sparsify_topk first")
    W = C_hat + C_hat.T
    isolated = np.flatnonzero(~W.any(axis=0))
    if isolated.size:
        shown = ", ".join(map(str, isolated[:10]))
        more = ", ..." if isolated.size > 10 else ""
        warnings.warn(
            f"{isolated.size} node(s) have no edges: [{shown}{more}]",
            IsolatedNodesWarning,
            stacklevel=2,
        )
    return AffinityGraph(values=W, isolated_nodes=isolated)
