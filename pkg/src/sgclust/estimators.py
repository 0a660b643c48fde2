"""Scikit-learn style estimators for self-representation clustering.

Each estimator runs the same three-stage pipeline on ``fit``: solve a
closed-form self-representation coefficient matrix, sparsify it into a
symmetric affinity graph, then spectrally cluster the graph.  They differ
only in the solver stage.

Following the scikit-learn convention, ``fit`` takes ``X`` with samples as
rows, shape (n_samples, n_features); internally the pipeline works on the
transposed matrix with samples as columns.
"""

import time
import warnings
from contextlib import contextmanager

import numpy as np
from sklearn.base import BaseEstimator, ClusterMixin

from . import graph, solvers, spectral
from .errors import ParameterError, error_stage
from .validation import check_data_matrix


@contextmanager
def _timed(timings, key):
    tic = time.perf_counter()
    try:
        yield
    finally:
        timings[key] = time.perf_counter() - tic


class BaseSelfRepresentationClustering(BaseEstimator, ClusterMixin):
    """Shared solve / sparsify / cluster pipeline.

    Parameters
    ----------
    n_clusters : int
        Number of clusters u.
    tau : float
        Fidelity weight of the solver's data term.
    n_neighbors : int
        k, nonzeros kept per column when sparsifying the coefficient
        matrix.
    zero_diagonal : bool
        Remove self-affinity before picking the top k entries.
    kmeans_restarts, kmeans_max_iters, random_state :
        Passed to the k-means step of spectral clustering.

    Attributes
    ----------
    labels_ : ndarray of shape (n_samples,)
    coefficient_matrix_ : ndarray of shape (n_samples, n_samples)
    affinity_matrix_ : ndarray of shape (n_samples, n_samples)
    timings_ : dict
        Wall-clock seconds per stage, keys "solve", "graph", "spectral".
    """

    def __init__(self, n_clusters=2, tau=1.0, n_neighbors=4, zero_diagonal=True,
                 kmeans_restarts=20, kmeans_max_iters=300, random_state=0):
        self.n_clusters = n_clusters
        self.tau = tau
        self.n_neighbors = n_neighbors
        self.zero_diagonal = zero_diagonal
        self.kmeans_restarts = kmeans_restarts
        self.kmeans_max_iters = kmeans_max_iters
        self.random_state = random_state

    def fit(self, X, y=None):
        """Cluster the samples in X (rows) and store ``labels_``."""
        Y = check_data_matrix(np.asarray(X).T)
        n = Y.shape[1]
        if not isinstance(self.n_clusters, (int, np.integer)) or self.n_clusters < 1:
            raise ParameterError(
                f"n_clusters must be a positive integer, got {self.n_clusters!r}"
            )
        if self.n_clusters > n:
            raise ParameterError(
                f"n_clusters={self.n_clusters} exceeds the number of samples {n}"
            )

        timings = {}
        with error_stage("solve"), _timed(timings, "solve"):
            C = self._solve(Y)

        with error_stage("graph"), _timed(timings, "graph"):
            C_hat = graph.sparsify_topk(C, self.n_neighbors,
                                        zero_diagonal=self.zero_diagonal)
            affinity = graph.build_affinity(C_hat)

        with error_stage("spectral"), _timed(timings, "spectral"):
            labels = spectral.spectral_cluster(
                affinity.values, self.n_clusters,
                restarts=self.kmeans_restarts,
                max_iters=self.kmeans_max_iters,
                seed=self.random_state,
            )

        self.coefficient_matrix_ = C
        self.affinity_matrix_ = affinity.values
        self.labels_ = labels
        self.timings_ = timings
        return self

    def fit_predict(self, X, y=None):
        return self.fit(X).labels_

    def _solve(self, Y):
        raise NotImplementedError


class FSSC(BaseSelfRepresentationClustering):
    """Clustering from the symmetry-constrained Frobenius solver.

    The coefficient matrix minimizes
    ``tau/2 * ||Y - Y C||_F^2 + 1/2 * ||C||_F^2`` subject to ``C = C.T``
    and has a spectral closed form; see
    :func:`sgclust.solvers.fssc_coefficients`.

    Examples
    --------
    >>> from sgclust import FSSC, generate_synthetic, SyntheticSpec
    >>> ds = generate_synthetic(SyntheticSpec(30, 3, 2, 20, seed=1))
    >>> labels = FSSC(n_clusters=2, tau=10.0).fit_predict(ds.matrix.T)
    """

    def __init__(self, n_clusters=2, tau=1.0, n_neighbors=4, zero_diagonal=True,
                 solver_method="auto", rank_eps=solvers.DEFAULT_RANK_EPS,
                 kmeans_restarts=20, kmeans_max_iters=300, random_state=0):
        super().__init__(n_clusters=n_clusters, tau=tau, n_neighbors=n_neighbors,
                         zero_diagonal=zero_diagonal,
                         kmeans_restarts=kmeans_restarts,
                         kmeans_max_iters=kmeans_max_iters,
                         random_state=random_state)
        self.solver_method = solver_method
        self.rank_eps = rank_eps

    def _solve(self, Y):
        return solvers.fssc_coefficients(Y, self.tau, rank_eps=self.rank_eps,
                                         method=self.solver_method)


class LRSC(BaseSelfRepresentationClustering):
    """Clustering from the low-rank (nuclear norm) solver.

    Uses the closed-form minimizer of
    ``||C||_* + tau/2 * ||Y - Y C||_F^2`` with ``C`` symmetric; see
    :func:`sgclust.solvers.lrsc_coefficients`.
    """

    def __init__(self, n_clusters=2, tau=1.0, n_neighbors=4, zero_diagonal=True,
                 rank_eps=solvers.DEFAULT_RANK_EPS,
                 kmeans_restarts=20, kmeans_max_iters=300, random_state=0):
        super().__init__(n_clusters=n_clusters, tau=tau, n_neighbors=n_neighbors,
                         zero_diagonal=zero_diagonal,
                         kmeans_restarts=kmeans_restarts,
                         kmeans_max_iters=kmeans_max_iters,
                         random_state=random_state)
        self.rank_eps = rank_eps

    def _solve(self, Y):
        return solvers.lrsc_coefficients(Y, self.tau, rank_eps=self.rank_eps)


class L2Graph(BaseSelfRepresentationClustering):
    """Clustering from per-sample ridge regressions on the other samples.

    Column i of the coefficient matrix solves
    ``min ||y_i - Y_i c||^2 + 2 * tau * ||c||^2`` where ``Y_i`` is the data
    with column i zeroed; see :func:`sgclust.solvers.l2graph_coefficients`.
    """

    def __init__(self, n_clusters=2, tau=1.0, n_neighbors=4, zero_diagonal=True,
                 normalize=True, kmeans_restarts=20, kmeans_max_iters=300,
                 random_state=0):
        super().__init__(n_clusters=n_clusters, tau=tau, n_neighbors=n_neighbors,
                         zero_diagonal=zero_diagonal,
                         kmeans_restarts=kmeans_restarts,
                         kmeans_max_iters=kmeans_max_iters,
                         random_state=random_state)
        self.normalize = normalize

    def _solve(self, Y):
        return solvers.l2graph_coefficients(Y, self.tau, normalize=self.normalize)


_ALGORITHMS = {"fssc": FSSC, "lrsc": LRSC, "l2graph": L2Graph}


def make_estimator(algorithm, **params):
    """Build an estimator by algorithm name ("fssc", "lrsc", "l2graph")."""
    try:
        cls = _ALGORITHMS[algorithm]
    except KeyError:
        known = ", ".join(sorted(_ALGORITHMS))
        raise ParameterError(
            f"unknown algorithm {algorithm!r}; expected one of: {known}"
        ) from None
    unknown = set(params) - set(cls().get_params())
    if unknown:
        warnings.warn(
            f"ignoring parameters not accepted by {cls.__name__}: "
            f"{sorted(unknown)}", UserWarning)
        params = {k: v for k, v in params.items() if k not in unknown}
    return cls(**params)
