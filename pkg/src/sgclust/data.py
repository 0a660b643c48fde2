"""Dataset generation, file I/O, and preprocessing.

Samples are columns everywhere: a data matrix has shape (m, n) with m
feature rows and n sample columns.  Two matrix file formats are supported:

* CSV: one row per feature, comma-separated values, samples as columns.
* "SGC1" binary: magic bytes ``SGC1``, little-endian uint32 ``m`` and
  ``n``, then ``m*n`` little-endian float64 values in column-major order.

Label files hold one integer per line; labels are re-indexed densely to
``[0, u)`` on load.
"""

import math
import struct
from dataclasses import dataclass

import numpy as np

from .errors import InputError, ParameterError
from .validation import check_data_matrix, check_labels

BINARY_MAGIC = b"SGC1"
_HEADER = struct.Struct("<4sII")


@dataclass(frozen=True)
class SyntheticSpec:
    """Recipe for a union-of-subspaces sample set.

    ``num_subspaces * subspace_dim`` must not exceed ``ambient_dim`` so the
    subspaces can be made pairwise orthogonal, and each subspace needs at
    least ``subspace_dim`` points to span it.
    """

    ambient_dim: int
    subspace_dim: int
    num_subspaces: int
    points_per_subspace: int
    noise_sigma: float = 0.0
    seed: int = 0

    @property
    def n_samples(self):
        return self.num_subspaces * self.points_per_subspace


@dataclass(frozen=True)
class Dataset:
    """A data matrix (samples as columns) with ground-truth labels."""

    matrix: np.ndarray
    labels: np.ndarray
    name: str = ""

    @property
    def n_samples(self):
        return self.matrix.shape[1]

    @property
    def n_classes(self):
        return int(self.labels.max()) + 1


def generate_synthetic(spec):
    """Draw unit-norm samples from pairwise-orthogonal random subspaces.

    Bases are disjoint coordinate blocks of one random rotation, so
    distinct subspaces are exactly orthogonal.  Each sample is the basis
    times standard-normal coefficients, scaled to unit norm, plus Gaussian
    noise of scale ``noise_sigma``.  A fixed seed reproduces the dataset
    bit for bit.

    Returns
    -------
    Dataset
        ``num_subspaces * points_per_subspace`` columns, labels grouped by
        subspace.
    """
    _check_synthetic_spec(spec)
    m, d, u, p = (
        spec.ambient_dim,
        spec.subspace_dim,
        spec.num_subspaces,
        spec.points_per_subspace,
    )
    rng = np.random.default_rng(spec.seed)
    rotation, _ = np.linalg.qr(rng.standard_normal((m, m)))
    blocks = []
    for j in range(u):
        basis = rotation[:, j * d : (j + 1) * d]
        samples = basis @ rng.standard_normal((d, p))
        norms = np.linalg.norm(samples, axis=0)
        norms[norms == 0] = 1.0
        samples = samples / norms
        if spec.noise_sigma > 0:
            samples = samples + spec.noise_sigma * rng.standard_normal((m, p))
        blocks.append(samples)
    name = (
        f"synthetic(u={u},d={d},m={m},p={p},"
        f"sigma={spec.noise_sigma:g},seed={spec.seed})"
    )
    return Dataset(
        matrix=np.concatenate(blocks, axis=1),
        labels=np.repeat(np.arange(u, dtype=np.int64), p),
        name=name,
    )


def load_matrix(path, format="csv"):
    """Read a data matrix from ``path`` in the given format.

    Parameters
    ----------
    path : str or Path
    format : {"csv", "binary"}

    Raises
    ------
    InputError
        On parse failures, dimension mismatches, or non-finite values;
        messages carry the offending line (CSV) or byte offset (binary).
    """
    if format == "csv":
        return _load_csv(path)
    if format == "binary":
        return _load_binary(path)
    raise ParameterError(f"format must be 'csv' or 'binary', got {format!r}")


def save_matrix(Y, path, format="csv"):
    """Write a data matrix to ``path``; binary round-trips bit for bit."""
    Y = check_data_matrix(Y)
    if format == "csv":
        with open(path, "w", encoding="utf-8") as fh:
            for row in Y:
                fh.write(",".join(repr(float(v)) for v in row))
                fh.write("\n")
    elif format == "binary":
        m, n = Y.shape
        with open(path, "wb") as fh:
            fh.write(_HEADER.pack(BINARY_MAGIC, m, n))
            fh.write(np.asarray(Y, dtype="<f8").tobytes(order="F"))
    else:
        raise ParameterError(f"format must be 'csv' or 'binary', got {format!r}")


def load_labels(path):
    """Read integer labels, one per line, re-indexed densely to [0, u)."""
    values = []
    lines = _read_lines(path)
    for lineno, line in enumerate(lines, start=1):
        text = line.strip()
        if not text:
            raise InputError(f"{path}: line {lineno}: blank line in label file")
        try:
            values.append(int(text))
        except ValueError:
            raise InputError(
                f"{path}: line {lineno}: cannot parse {text!r} as an integer"
            ) from None
    if not values:
        raise InputError(f"{path}: empty label file")
    _, dense = np.unique(np.asarray(values, dtype=np.int64), return_inverse=True)
    return dense.astype(np.int64)


def save_labels(labels, path):
    """Write integer labels, one per line."""
    labels = check_labels(labels)
    with open(path, "w", encoding="utf-8") as fh:
        for value in labels:
            fh.write(f"{int(value)}\n")


def pca_project(Y, dim):
    """Project feature rows onto the top principal directions.

    Directions come from the mean-centered data; the output has ``dim``
    rows and uncorrelated (diagonal-covariance) features.

    Parameters
    ----------
    Y : array-like, shape (m, n)
    dim : int, 1 <= dim <= min(m, n)
    """
    Y = check_data_matrix(Y)
    m, n = Y.shape
    if not isinstance(dim, (int, np.integer)) or not 1 <= dim <= min(m, n):
        raise ParameterError(f"dim must be an integer in [1, {min(m, n)}], got {dim!r}")
    centered = Y - Y.mean(axis=1, keepdims=True)
    U, _, _ = np.linalg.svd(centered, full_matrices=False)
    return U[:, :dim].T @ centered


def normalize_columns(Y):
    """Scale each sample column to unit Euclidean norm; zero columns stay zero."""
    Y = check_data_matrix(Y).copy()
    norms = np.linalg.norm(Y, axis=0)
    nz = norms > 0
    Y[:, nz] /= norms[nz]
    return Y


def _read_lines(path):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            lines = fh.read().split("\n")
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc
    while lines and lines[-1] == "":
        lines.pop()
    return lines


def _load_csv(path):
    rows = []
    width = None
    for lineno, line in enumerate(_read_lines(path), start=1):
        parts = line.split(",")
        if width is None:
            width = len(parts)
        elif len(parts) != width:
            raise InputError(
                f"{path}: line {lineno}: expected {width} values, got {len(parts)}"
            )
        values = []
        for col, token in enumerate(parts, start=1):
            try:
                value = float(token)
            except ValueError:
                raise InputError(
                    f"{path}: line {lineno}, column {col}: cannot parse {token.strip()!r}"
                ) from None
            if not math.isfinite(value):
                raise InputError(
                    f"{path}: line {lineno}, column {col}: non-finite value {token.strip()!r}"
                )
            values.append(value)
        rows.append(values)
    if not rows:
        raise InputError(f"{path}: empty matrix file")
    return check_data_matrix(np.asarray(rows))


def _load_binary(path):
    try:
        with open(path, "rb") as fh:
            blob = fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc
    if len(blob) < _HEADER.size or blob[:4] != BINARY_MAGIC:
        raise InputError(f"{path}: not a {BINARY_MAGIC.decode()} matrix file (bad magic)")
    _, m, n = _HEADER.unpack_from(blob)
    expected = _HEADER.size + 8 * m * n
    if len(blob) != expected:
        raise InputError(
            f"{path}: expected {expected} bytes for a {m}x{n} matrix, got {len(blob)}"
        )
    flat = np.frombuffer(blob, dtype="<f8", offset=_HEADER.size)
    bad = np.flatnonzero(~np.isfinite(flat))
    if bad.size:
        offset = _HEADER.size + 8 * int(bad[0])
        raise InputError(f"{path}: non-finite value at byte offset {offset}")
    return check_data_matrix(flat.reshape((m, n), order="F").copy())


def _check_synthetic_spec(spec):
    m, d, u, p = (
        spec.ambient_dim,
        spec.subspace_dim,
        spec.num_subspaces,
        spec.points_per_subspace,
    )
    for label, value in (("ambient_dim", m), ("subspace_dim", d),
                         ("num_subspaces", u), ("points_per_subspace", p)):
        if not isinstance(value, (int, np.integer)) or value < 1:
            raise ParameterError(f"{label} must be a positive integer, got {value!r}")
    if d >= m:
        raise ParameterError(f"subspace_dim must be < ambient_dim, got {d} >= {m}")
    if u * d > m:
        raise ParameterError(
            f"num_subspaces * subspace_dim must be <= ambient_dim for "
            f"orthogonal subspaces, got {u}*{d} > {m}"
        )
    if p < d:
        raise ParameterError(
            f"points_per_subspace must be >= subspace_dim, got {p} < {d}"
        )
    if spec.n_samples < 2:
        raise ParameterError("need at least 2 samples in total")
    if not math.isfinite(spec.noise_sigma) or spec.noise_sigma < 0:
        raise ParameterError(f"noise_sigma must be >= 0, got {spec.noise_sigma!r}")
    if not isinstance(spec.seed, (int, np.integer)) or spec.seed < 0:
        raise ParameterError(f"seed must be a nonnegative integer, got {spec.seed!r}")
