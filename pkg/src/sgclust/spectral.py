"""Normalized spectral clustering of an affinity graph.

The variant used throughout is the symmetric normalized Laplacian with a
row-normalized eigenvector embedding followed by restarted k-means.  All
randomness flows from an explicit integer seed, and the k-means stream for
restart ``r`` is derived from ``(seed, r)``, so results do not depend on
execution order or thread count.
"""

import numpy as np
import scipy.linalg

from .errors import InputError, NumericalError, ParameterError
from .validation import check_square

# points per chunk when forming squared distances; keeps temporaries small
# and avoids BLAS so results cannot depend on thread count
_CHUNK_ELEMS = 1 << 22


def normalized_laplacian(W):
    """Symmetric normalized Laplacian ``I - D^{-1/2} W D^{-1/2}``.

    ``D`` is the diagonal degree (row-sum) matrix.  Degree-zero nodes get a
    diagonal entry of 1 and zero off-diagonals, i.e. they behave as
    singleton components.  Eigenvalues lie in [0, 2].
    """
    W = _check_affinity(W)
    degrees = W.sum(axis=1)
    inv_sqrt = np.where(degrees > 0, 1.0 / np.sqrt(np.where(degrees > 0, degrees, 1.0)), 0.0)
    L = -(W * inv_sqrt[:, np.newaxis]) * inv_sqrt[np.newaxis, :]
    L[np.diag_indices_from(L)] += 1.0
    return L


def spectral_embed(W, n_clusters):
    """Rows of the bottom-``n_clusters`` eigenvectors of the Laplacian.

    Eigenvectors for the ``n_clusters`` smallest eigenvalues form the
    columns; each row is then scaled to unit Euclidean norm (zero rows are
    left as zero).

    Returns
    -------
    ndarray, shape (n, n_clusters)
    """
    W = _check_affinity(W)
    n = W.shape[0]
    if not isinstance(n_clusters, (int, np.integer)) or not 1 <= n_clusters <= n:
        raise ParameterError(f"n_clusters must be an integer in [1, {n}], got {n_clusters!r}")
    L = normalized_laplacian(W)
    try:
        _, vectors = scipy.linalg.eigh(L, subset_by_index=(0, n_clusters - 1))
    except (scipy.linalg.LinAlgError, ValueError) as exc:
        raise NumericalError(
            f"eigendecomposition failed for {n}x{n} Laplacian "
            f"(max |entry| {np.abs(L).max():.3e}): {exc}"
        ) from exc
    norms = np.linalg.norm(vectors, axis=1)
    nz = norms > 0
    vectors[nz] /= norms[nz, np.newaxis]
    return vectors


def kmeans(points, n_clusters, restarts=20, max_iters=300, seed=0):
    """Restarted Lloyd k-means with distance-weighted seeding.

    Each restart draws its own generator from ``(seed, restart_index)`` and
    initialises centers k-means++-style (first center uniform, later ones
    proportional to squared distance).  A cluster left empty by an
    assignment step is re-seeded at the point farthest from its assigned
    center; if every point sits exactly on its center the cluster stays
    empty and labels collapse.  The assignment with the best inertia over
    all restarts wins, earliest restart on ties.

    Returns
    -------
    ndarray of int64, shape (n,)
        Labels in ``[0, n_clusters)``; identical for identical inputs and
        seed.
    """
    points = np.asarray(points, dtype=np.float64)
    if points.ndim != 2:
        raise InputError(f"points must be 2-d, got ndim={points.ndim}")
    if not np.all(np.isfinite(points)):
        raise InputError("points contain non-finite values")
    n = points.shape[0]
    if not isinstance(n_clusters, (int, np.integer)) or not 1 <= n_clusters <= n:
        raise ParameterError(f"n_clusters must be an integer in [1, {n}], got {n_clusters!r}")
    if restarts < 1 or max_iters < 1:
        raise ParameterError("restarts and max_iters must be >= 1")
    _check_seed(seed)

    best_labels = None
    best_inertia = np.inf
    for restart in range(restarts):
        rng = np.random.default_rng([seed, restart])
        labels, inertia = _kmeans_single(points, n_clusters, max_iters, rng)
        if inertia < best_inertia:
            best_inertia = inertia
            best_labels = labels
    return best_labels


def spectral_cluster(W, n_clusters, restarts=20, max_iters=300, seed=0):
    """Cluster graph nodes: Laplacian embedding followed by k-means.

    Returns
    -------
    ndarray of int64, shape (n,)
        Labels in ``[0, n_clusters)``.
    """
    embedding = spectral_embed(W, n_clusters)
    return kmeans(embedding, n_clusters, restarts=restarts, max_iters=max_iters, seed=seed)


def _check_affinity(W):
    W = check_square(np.asarray(W, dtype=np.float64), name="affinity matrix")
    scale = max(1.0, np.abs(W).max())
    if np.abs(W - W.T).max() > 1e-10 * scale:
        raise InputError("affinity matrix must be symmetric")
    if np.any(W < 0):
        raise InputError("affinity matrix must be nonnegative")
    return W


def _check_seed(seed):
    if not isinstance(seed, (int, np.integer)) or seed < 0 or seed >= 2**64:
        raise ParameterError(f"seed must be an unsigned 64-bit integer, got {seed!r}")


def _sq_distances(points, centers):
    """Squared Euclidean distances, (n_points, n_centers), chunked broadcasting."""
    n = points.shape[0]
    out = np.empty((n, centers.shape[0]))
    step = max(1, _CHUNK_ELEMS // max(1, centers.size))
    for start in range(0, n, step):
        diff = points[start : start + step, np.newaxis, :] - centers[np.newaxis, :, :]
        out[start : start + step] = np.einsum("ijk,ijk->ij", diff, diff)
    return out


def _plus_plus_centers(points, n_clusters, rng):
    n = points.shape[0]
    centers = np.empty((n_clusters, points.shape[1]))
    centers[0] = points[int(rng.integers(n))]
    closest = ((points - centers[0]) ** 2).sum(axis=1)
    for j in range(1, n_clusters):
        total = closest.sum()
        if total > 0:
            idx = int(rng.choice(n, p=closest / total))
        else:
            idx = int(rng.integers(n))
        centers[j] = points[idx]
        np.minimum(closest, ((points - centers[j]) ** 2).sum(axis=1), out=closest)
    return centers


def _kmeans_single(points, n_clusters, max_iters, rng):
    n = points.shape[0]
    centers = _plus_plus_centers(points, n_clusters, rng)
    labels = None
    inertia = np.inf
    for _ in range(max_iters):
        d2 = _sq_distances(points, centers)
        new_labels = np.argmin(d2, axis=1)
        assigned = d2[np.arange(n), new_labels].copy()
        counts = np.bincount(new_labels, minlength=n_clusters)
        for j in np.flatnonzero(counts == 0):
            far = int(np.argmax(assigned))
            if assigned[far] <= 0.0:
                break  # every point sits on its center; cluster stays empty
            centers[j] = points[far]
            new_labels[far] = j
            assigned[far] = 0.0
        inertia = float(assigned.sum())
        if labels is not None and np.array_equal(new_labels, labels):
            break
        labels = new_labels
        for j in range(n_clusters):
            members = labels == j
            if members.any():
                centers[j] = points[members].mean(axis=0)
    return labels.astype(np.int64), inertia
