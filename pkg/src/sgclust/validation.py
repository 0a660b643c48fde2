"""Input validation helpers used across the package."""

import numbers

import numpy as np

from .errors import InputError, ParameterError


def check_data_matrix(Y):
    """Validate a data matrix with samples as columns.

    Parameters
    ----------
    Y : array-like, shape (m, n)
        ``m`` feature rows by ``n`` sample columns.

    Returns
    -------
    ndarray of float64, shape (m, n)

    Raises
    ------
    InputError
        If ``Y`` is not a finite 2-d matrix with at least one row and two
        columns (self-representation of a single sample is degenerate).
    """
    Y = np.asarray(Y, dtype=np.float64)
    if Y.ndim != 2:
        raise InputError(f"data matrix must be 2-d, got ndim={Y.ndim}")
    m, n = Y.shape
    if m < 1:
        raise InputError("data matrix needs at least one feature row")
    if n < 2:
        raise InputError(f"need at least 2 sample columns, got n={n}")
    if not np.all(np.isfinite(Y)):
        row, col = np.argwhere(~np.isfinite(Y))[0]
        raise InputError(f"non-finite entry at row {row}, column {col}")
    return Y


def check_square(C, name="coefficient matrix"):
    """Validate a finite square matrix and return it as float64."""
    C = np.asarray(C, dtype=np.float64)
    if C.ndim != 2 or C.shape[0] != C.shape[1]:
        raise InputError(f"{name} must be square, got shape {C.shape}")
    if not np.all(np.isfinite(C)):
        raise InputError(f"{name} contains non-finite entries")
    return C


def check_labels(labels, name="labels"):
    """Validate an integer label vector and return it as int64."""
    labels = np.asarray(labels)
    if labels.ndim != 1:
        raise InputError(f"{name} must be 1-d, got ndim={labels.ndim}")
    if labels.size == 0:
        raise InputError(f"{name} must be nonempty")
    if not np.issubdtype(labels.dtype, np.integer):
        rounded = np.round(np.asarray(labels, dtype=np.float64))
        if not np.array_equal(rounded, labels):
            raise InputError(f"{name} must be integers")
        labels = rounded
    return labels.astype(np.int64)


def check_tau(tau):
    """Validate the balance parameter: a finite positive real."""
    if not isinstance(tau, numbers.Real) or not np.isfinite(tau) or tau <= 0:
        raise ParameterError(f"tau must be a finite positive real, got {tau!r}")
    return float(tau)


def check_rank_eps(rank_eps):
    """Validate the relative rank-truncation threshold: in [0, 1)."""
    if not isinstance(rank_eps, numbers.Real) or not 0 <= rank_eps < 1:
        raise ParameterError(f"rank_eps must lie in [0, 1), got {rank_eps!r}")
    return float(rank_eps)
