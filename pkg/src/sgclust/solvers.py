"""Closed-form self-representation solvers.

Each solver maps a data matrix ``Y`` (features by samples) to an n-by-n
coefficient matrix ``C`` whose column ``i`` encodes sample ``i`` as a linear
combination of the samples.  All three solvers admit closed forms, so no
iterative optimisation is involved:

* :func:`fssc_coefficients` minimises
  ``tau/2 * ||Y - Y C||_F^2 + 1/2 * ||C||_F^2``  subject to  ``C = C^T``.
* :func:`lrsc_coefficients` minimises
  ``||C||_* + tau/2 * ||Y - Y C||_F^2``  subject to  ``C = C^T``
  (``||.||_*`` is the nuclear norm).
* :func:`l2graph_coefficients` minimises, independently for every column,
  ``1/2 * ||y_i - Y_i c||_2^2 + tau * ||c||_2^2``  where ``Y_i`` is ``Y``
  with column ``i`` zeroed out.

The first two reduce to per-singular-value shrinkage of the data spectrum
applied in the basis of the right singular vectors; the third reduces to
ridge normal equations shared by all columns.
"""

import math
from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .errors import NumericalError, ParameterError
from .validation import check_data_matrix, check_rank_eps, check_tau

DEFAULT_RANK_EPS = 1e-12


@dataclass(frozen=True)
class SvdFactors:
    """Thin SVD of a data matrix, truncated to its effective rank.

    Attributes
    ----------
    left_vectors : ndarray, shape (m, r)
        Orthonormal columns.
    singular_values : ndarray, shape (r,)
        Strictly positive, in descending order.
    right_vectors : ndarray, shape (n, r)
        Orthonormal columns.
    rank_tolerance : float
        Absolute cutoff below which singular values were discarded.
    """

    left_vectors: np.ndarray
    singular_values: np.ndarray
    right_vectors: np.ndarray
    rank_tolerance: float

    @property
    def rank(self):
        return self.singular_values.size

    def reconstruct(self):
        """Return ``U @ diag(s) @ V.T``."""
        return (self.left_vectors * self.singular_values) @ self.right_vectors.T


def thin_svd(Y, rank_eps=DEFAULT_RANK_EPS):
    """Thin SVD of ``Y`` truncated at the relative threshold ``rank_eps``.

    Singular values ``<= rank_eps * s_max`` are treated as zero and dropped,
    so a zero matrix yields an empty factor set (rank 0).

    Parameters
    ----------
    Y : array-like, shape (m, n)
    rank_eps : float in [0, 1)

    Returns
    -------
    SvdFactors
    """
    Y = check_data_matrix(Y)
    rank_eps = check_rank_eps(rank_eps)
    try:
        U, s, Vt = np.linalg.svd(Y, full_matrices=False)
    except np.linalg.LinAlgError as exc:
        raise NumericalError(f"SVD failed on {Y.shape} matrix: {exc}") from exc
    tol = float(rank_eps * s[0]) if s.size else 0.0
    r = int(np.count_nonzero(s > tol))
    return SvdFactors(
        left_vectors=np.ascontiguousarray(U[:, :r]),
        singular_values=s[:r].copy(),
        right_vectors=np.ascontiguousarray(Vt[:r].T),
        rank_tolerance=tol,
    )


def fssc_shrinkage(lam, tau):
    """Shrinkage weight ``tau*lam^2 / (1 + tau*lam^2)`` for one singular value.

    This is the minimiser over ``d`` of the scalar cost
    ``tau/2 * (1 - d)^2 * lam^2 + 1/2 * d^2``; it lies in ``[0, 1)``,
    equals 0 at ``lam = 0``, and is nondecreasing in both ``lam`` and
    ``tau``.  Accepts scalars or arrays of nonnegative ``lam``.
    """
    tau = check_tau(tau)
    arr = np.asarray(lam, dtype=np.float64)
    if np.any(arr < 0) or not np.all(np.isfinite(arr)):
        raise ParameterError("singular values must be finite and nonnegative")
    t = tau * arr**2
    out = t / (1.0 + t)
    return float(out) if np.isscalar(lam) or np.ndim(lam) == 0 else out


def fssc_coefficients(Y, tau, rank_eps=DEFAULT_RANK_EPS, method="auto"):
    """Symmetric F-norm self-representation matrix of ``Y``.

    The constrained minimiser is ``C = V diag(d_i) V^T`` where ``V`` holds
    the right singular vectors of ``Y`` and ``d_i = fssc_shrinkage(s_i, tau)``.
    Equivalently ``C`` solves the ridge normal equations
    ``(tau * Y^T Y + I) C = tau * Y^T Y``.

    Parameters
    ----------
    Y : array-like, shape (m, n)
        Data with samples as columns.
    tau : float > 0
        Balance between reconstruction fidelity and coefficient energy.
    rank_eps : float in [0, 1)
        Relative spectrum cutoff; components below it contribute nothing.
    method : {"auto", "svd", "ridge"}
        "svd" is the reference spectral form; "ridge" solves the normal
        equations directly.  "auto" picks "ridge" when n <= m and "svd"
        otherwise (cheaper at each shape); the results agree to rounding.

    Returns
    -------
    ndarray, shape (n, n)
        Exactly symmetric; eigenvalues lie in [0, 1).  Zero data gives
        the zero matrix.
    """
    Y = check_data_matrix(Y)
    tau = check_tau(tau)
    m, n = Y.shape
    if method == "auto":
        method = "ridge" if n <= m else "svd"
    if method == "svd":
        factors = thin_svd(Y, rank_eps)
        if factors.rank == 0:
            return np.zeros((n, n))
        delta = fssc_shrinkage(factors.singular_values, tau)
        V = factors.right_vectors
        C = (V * delta) @ V.T
    elif method == "ridge":
        check_rank_eps(rank_eps)
        G = tau * (Y.T @ Y)
        try:
            C = scipy.linalg.solve(G + np.eye(n), G, assume_a="pos")
        except scipy.linalg.LinAlgError as exc:  # pragma: no cover
            raise NumericalError(f"ridge solve failed: {exc}") from exc
    else:
        raise ParameterError(f"method must be 'auto', 'svd' or 'ridge', got {method!r}")
    return _symmetrize(C)


def lrsc_coefficients(Y, tau, rank_eps=DEFAULT_RANK_EPS):
    """Symmetric low-rank self-representation matrix of ``Y``.

    Nuclear-norm shrinkage keeps only spectral components with singular
    value ``s_i > 1/sqrt(tau)`` and weights them by ``1 - 1/(tau*s_i^2)``:
    ``C = V_1 (I - (1/tau) S_1^{-2}) V_1^T`` over the retained components.
    Each weight is the minimiser over ``d`` of
    ``|d| + tau/2 * (1 - d)^2 * s_i^2``.

    Returns
    -------
    ndarray, shape (n, n)
        Exactly symmetric; eigenvalues lie in [0, 1).  When no singular
        value clears the threshold the result is the zero matrix.
    """
    Y = check_data_matrix(Y)
    tau = check_tau(tau)
    n = Y.shape[1]
    factors = thin_svd(Y, rank_eps)
    lam = factors.singular_values
    keep = lam > 1.0 / math.sqrt(tau)
    if not np.any(keep):
        return np.zeros((n, n))
    V1 = factors.right_vectors[:, keep]
    delta = 1.0 - 1.0 / (tau * lam[keep] ** 2)
    return _symmetrize((V1 * delta) @ V1.T)


def l2graph_coefficients(Y, tau, normalize=True):
    """Per-column ridge representation of every sample over the others.

    Column ``i`` solves ``min_c 1/2*||y_i - Y_i c||^2 + tau*||c||^2`` with
    ``Y_i`` equal to ``Y`` with column ``i`` zeroed, i.e. the normal
    equations ``(Y_i^T Y_i + 2*tau*I) c = Y_i^T y_i``.  All columns come
    from one shared factorisation: with ``P = (Y^T Y + 2*tau*I)^{-1}``,
    column ``i`` is ``-P[:, i] / P[i, i]`` with entry ``i`` forced to 0
    (a block-inverse identity; P is positive definite so P[i, i] > 0).

    Parameters
    ----------
    Y : array-like, shape (m, n)
    tau : float > 0
    normalize : bool
        Rescale every nonzero column to unit Euclidean norm (zero columns
        are left untouched).

    Returns
    -------
    ndarray, shape (n, n)
        Zero diagonal; not symmetric in general.  A zero data column
        yields a zero coefficient column.
    """
    Y = check_data_matrix(Y)
    tau = check_tau(tau)
    n = Y.shape[1]
    M = Y.T @ Y
    M[np.diag_indices(n)] += 2.0 * tau
    try:
        cho = scipy.linalg.cho_factor(M, lower=True)
        P = scipy.linalg.cho_solve(cho, np.eye(n))
    except scipy.linalg.LinAlgError as exc:  # pragma: no cover
        raise NumericalError(f"Gram system factorisation failed: {exc}") from exc
    C = -P / np.diag(P)[np.newaxis, :]
    np.fill_diagonal(C, 0.0)
    C[:, np.linalg.norm(Y, axis=0) == 0] = 0.0
    if normalize:
        norms = np.linalg.norm(C, axis=0)
        nz = norms > 0
        C[:, nz] /= norms[nz]
    return C


def _symmetrize(C):
    # float addition commutes, so (C + C.T)/2 is bitwise symmetric
    return (C + C.T) / 2.0
