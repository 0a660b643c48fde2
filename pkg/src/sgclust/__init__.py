"""Self-representation subspace clustering with closed-form solvers.

The pipeline: solve an n x n coefficient matrix expressing each sample as
a combination of the others, keep the k largest coefficients per column,
symmetrize into an affinity graph, and spectrally cluster it.  Three
solvers are provided, all closed form: a symmetry-constrained Frobenius
ridge (FSSC), a nuclear-norm solver (LRSC), and per-sample ridge
regressions (L2Graph).
"""

from .data import (
    Dataset,
    SyntheticSpec,
    generate_synthetic,
    load_labels,
    load_matrix,
    normalize_columns,
    pca_project,
    save_labels,
    save_matrix,
)
from .errors import InputError, NumericalError, ParameterError, SgclustError
from .estimators import FSSC, L2Graph, LRSC, make_estimator
from .graph import AffinityGraph, IsolatedNodesWarning, build_affinity, sparsify_topk
from .metrics import (
    ScoreReport,
    ScoreSummary,
    aggregate,
    clustering_accuracy,
    clustering_error,
    contingency_table,
    nmi,
)
from .solvers import (
    SvdFactors,
    fssc_coefficients,
    fssc_shrinkage,
    l2graph_coefficients,
    lrsc_coefficients,
    thin_svd,
)
from .spectral import kmeans, normalized_laplacian, spectral_cluster, spectral_embed

__version__ = "0.1.0"

__all__ = [
    "AffinityGraph",
    "Dataset",
    "FSSC",
    "InputError",
    "IsolatedNodesWarning",
    "L2Graph",
    "LRSC",
    "NumericalError",
    "ParameterError",
    "ScoreReport",
    "ScoreSummary",
    "SgclustError",
    "SvdFactors",
    "SyntheticSpec",
    "aggregate",
    "build_affinity",
    "clustering_accuracy",
    "clustering_error",
    "contingency_table",
    "fssc_coefficients",
    "fssc_shrinkage",
    "generate_synthetic",
    "kmeans",
    "l2graph_coefficients",
    "load_labels",
    "load_matrix",
    "lrsc_coefficients",
    "make_estimator",
    "nmi",
    "normalize_columns",
    "normalized_laplacian",
    "pca_project",
    "save_labels",
    "save_matrix",
    "sparsify_topk",
    "spectral_cluster",
    "spectral_embed",
    "thin_svd",
    "__version__",
]
