"""Benchmark command line: run one experiment, sweep a grid, or generate data.

Subcommands
-----------
run
    Cluster one dataset (file pair or synthetic recipe), repeat with
    derived k-means seeds, and report aggregate metrics as CSV.
sweep
    Repeat ``run`` over the Cartesian product of a tau grid and a k grid,
    one CSV row per cell.
gen
    Write a synthetic dataset to a matrix file and a label file.

Options come from flags, optionally layered over a JSON config file
(``--config``); flags override file entries.  Report CSVs start with the
line ``# schema=1`` followed by a header row.  Errors exit nonzero with a
message naming the pipeline stage that failed (load, preprocess, solve,
graph, spectral, score, write).
"""

import argparse
import json
import sys
import time
from dataclasses import dataclass, replace

import numpy as np

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
from .errors import InputError, ParameterError, SgclustError, error_stage
from .estimators import make_estimator
from .metrics import ScoreReport, aggregate, clustering_accuracy, nmi

SCHEMA_LINE = "# schema=1"

RUN_COLUMNS = (
    "algorithm", "tau", "k", "u", "repeats",
    "acc_mean", "acc_median", "acc_min", "acc_max",
    "nmi_mean", "nmi_median", "nmi_min", "nmi_max",
    "err_mean", "err_median", "err_min", "err_max",
    "time_mean_s", "solve_mean_s", "graph_mean_s", "spectral_mean_s",
)

SWEEP_COLUMNS = (
    "algorithm", "tau", "k", "u", "repeats",
    "acc_mean", "nmi_mean", "err_mean", "time_mean_s",
)

_ALGORITHM_CHOICES = ("fssc", "lrsc", "l2graph")
_FORMAT_CHOICES = ("csv", "binary")


@dataclass(frozen=True)
class RunConfig:
    """One experiment: data source, algorithm parameters, repeat protocol."""

    algorithm: str = "fssc"
    tau: float = 1.0
    k: int = 4
    clusters: int = None
    repeats: int = 20
    seed: int = 0
    input: str = None
    labels: str = None
    format: str = "csv"
    synthetic: SyntheticSpec = None
    pca_dim: int = None
    normalize: bool = False
    zero_diagonal: bool = True
    out: str = None


@dataclass(frozen=True)
class SweepConfig:
    base: RunConfig
    tau_grid: tuple
    k_grid: tuple


def derive_seed(seed, repeat):
    """Stable per-repeat k-means seed from the experiment seed."""
    return int(np.random.SeedSequence([seed, repeat]).generate_state(1, np.uint64)[0])


def load_dataset(config):
    """Materialize the configured data source as a Dataset."""
    with error_stage("load"):
        if (config.synthetic is None) == (config.input is None):
            raise InputError(
                "exactly one data source is required: --input or --synthetic"
            )
        if config.synthetic is not None:
            return generate_synthetic(config.synthetic)
        if config.labels is None:
            raise InputError("--labels is required when clustering a file input")
        matrix = load_matrix(config.input, format=config.format)
        labels = load_labels(config.labels)
        if labels.shape[0] != matrix.shape[1]:
            raise InputError(
                f"{config.labels}: {labels.shape[0]} labels for "
                f"{matrix.shape[1]} samples in {config.input}"
            )
        return Dataset(matrix=matrix, labels=labels, name=str(config.input))


def preprocess(Y, config):
    """Apply the configured PCA projection, then column normalization."""
    with error_stage("preprocess"):
        if config.pca_dim is not None:
            Y = pca_project(Y, config.pca_dim)
        if config.normalize:
            Y = normalize_columns(Y)
        return Y


def run_once(config, dataset=None, kmeans_seed=None):
    """Execute solve -> sparsify -> cluster -> score for one configuration.

    ``runtime_seconds`` covers the compute pipeline only; loading,
    preprocessing, and scoring are excluded.
    """
    if dataset is None:
        dataset = load_dataset(config)
    Y = preprocess(dataset.matrix, config)
    u = config.clusters if config.clusters is not None else dataset.n_classes
    seed = config.seed if kmeans_seed is None else kmeans_seed
    params = {
        "n_clusters": u,
        "tau": config.tau,
        "n_neighbors": config.k,
        "zero_diagonal": config.zero_diagonal,
        "random_state": seed,
    }
    estimator = make_estimator(config.algorithm, **params)
    tic = time.perf_counter()
    with error_stage("cluster"):
        estimator.fit(Y.T)
    elapsed = time.perf_counter() - tic
    with error_stage("score"):
        accuracy = clustering_accuracy(estimator.labels_, dataset.labels)
        mutual = nmi(estimator.labels_, dataset.labels)
    return ScoreReport(
        accuracy=accuracy,
        nmi=mutual,
        runtime_seconds=elapsed,
        solve_seconds=estimator.timings_["solve"],
        graph_seconds=estimator.timings_["graph"],
        spectral_seconds=estimator.timings_["spectral"],
    )


def run_repeated(config, dataset=None):
    """Run ``config.repeats`` times, varying only the k-means seed.

    The dataset is loaded (or generated) once, so all randomness beyond
    the data itself comes from the derived per-repeat seeds.

    Returns
    -------
    (ScoreSummary, list of ScoreReport)
    """
    if config.repeats < 1:
        raise ParameterError(f"repeats must be >= 1, got {config.repeats!r}")
    if dataset is None:
        dataset = load_dataset(config)
    reports = [
        run_once(config, dataset=dataset,
                 kmeans_seed=derive_seed(config.seed, repeat))
        for repeat in range(config.repeats)
    ]
    return aggregate(reports), reports


def run_sweep(config):
    """Run the full tau x k grid; rows ordered by (tau, k) ascending."""
    if not config.tau_grid or not config.k_grid:
        raise ParameterError("tau_grid and k_grid must be nonempty")
    dataset = load_dataset(config.base)
    rows = []
    for tau in sorted(config.tau_grid):
        for k in sorted(config.k_grid):
            cell = replace(config.base, tau=tau, k=k)
            summary, _ = run_repeated(cell, dataset=dataset)
            rows.append(_sweep_row(cell, dataset, summary))
    return rows


def _resolved_clusters(config, dataset):
    return config.clusters if config.clusters is not None else dataset.n_classes


def _run_row(config, dataset, summary):
    return {
        "algorithm": config.algorithm,
        "tau": config.tau,
        "k": config.k,
        "u": _resolved_clusters(config, dataset),
        "repeats": config.repeats,
        "acc_mean": summary.accuracy.mean,
        "acc_median": summary.accuracy.median,
        "acc_min": summary.accuracy.min,
        "acc_max": summary.accuracy.max,
        "nmi_mean": summary.nmi.mean,
        "nmi_median": summary.nmi.median,
        "nmi_min": summary.nmi.min,
        "nmi_max": summary.nmi.max,
        "err_mean": summary.error.mean,
        "err_median": summary.error.median,
        "err_min": summary.error.min,
        "err_max": summary.error.max,
        "time_mean_s": summary.runtime_mean_seconds,
        "solve_mean_s": summary.solve_mean_seconds,
        "graph_mean_s": summary.graph_mean_seconds,
        "spectral_mean_s": summary.spectral_mean_seconds,
    }


def _sweep_row(config, dataset, summary):
    return {
        "algorithm": config.algorithm,
        "tau": config.tau,
        "k": config.k,
        "u": _resolved_clusters(config, dataset),
        "repeats": config.repeats,
        "acc_mean": summary.accuracy.mean,
        "nmi_mean": summary.nmi.mean,
        "err_mean": summary.error.mean,
        "time_mean_s": summary.runtime_mean_seconds,
    }


def _format_cell(value):
    if isinstance(value, (float, np.floating)):
        return repr(float(value))
    return str(value)


def format_report(columns, rows):
    """Render rows as versioned CSV text (schema line, header, data)."""
    lines = [SCHEMA_LINE, ",".join(columns)]
    for row in rows:
        lines.append(",".join(_format_cell(row[name]) for name in columns))
    return "\n".join(lines) + "\n"


def write_report(columns, rows, out):
    text = format_report(columns, rows)
    with error_stage("write"):
        if out is None:
            sys.stdout.write(text)
            return
        try:
            with open(out, "w", encoding="utf-8") as fh:
                fh.write(text)
        except OSError as exc:
            raise InputError(f"cannot write {out}: {exc}") from exc


def _parse_synthetic(value, seed):
    """Parse a synthetic recipe: "m=50,d=4,u=5,p=40,sigma=0.01" or a dict."""
    if isinstance(value, SyntheticSpec):
        return value
    if isinstance(value, str):
        fields = {}
        for chunk in value.split(","):
            key, sep, text = chunk.partition("=")
            if not sep:
                raise InputError(
                    f"synthetic recipe entries look like key=value, got {chunk!r}"
                )
            fields[key.strip()] = text.strip()
    elif isinstance(value, dict):
        fields = dict(value)
    else:
        raise InputError(f"cannot parse synthetic recipe from {value!r}")

    aliases = {
        "m": "ambient_dim", "ambient_dim": "ambient_dim",
        "d": "subspace_dim", "subspace_dim": "subspace_dim",
        "u": "num_subspaces", "num_subspaces": "num_subspaces",
        "p": "points_per_subspace", "points_per_subspace": "points_per_subspace",
        "sigma": "noise_sigma", "noise_sigma": "noise_sigma",
    }
    kwargs = {}
    for key, raw in fields.items():
        try:
            name = aliases[key]
        except KeyError:
            raise InputError(
                f"unknown synthetic recipe key {key!r}; expected m, d, u, p, sigma"
            ) from None
        try:
            kwargs[name] = float(raw) if name == "noise_sigma" else int(raw)
        except (TypeError, ValueError):
            raise InputError(
                f"synthetic recipe key {key!r} has a bad value {raw!r}"
            ) from None
    missing = [k for k in ("m", "d", "u", "p")
               if aliases[k] not in kwargs]
    if missing:
        raise InputError(
            f"synthetic recipe is missing key(s): {', '.join(missing)}"
        )
    return SyntheticSpec(seed=seed, **kwargs)


def _parse_grid(value, kind, name):
    if value is None:
        return None
    if isinstance(value, str):
        parts = [p for p in value.split(",") if p.strip()]
    elif isinstance(value, (list, tuple)):
        parts = list(value)
    else:
        raise InputError(f"{name} must be a comma-separated list, got {value!r}")
    if not parts:
        raise InputError(f"{name} must be nonempty")
    try:
        return tuple(kind(p) for p in parts)
    except (TypeError, ValueError):
        raise InputError(f"{name} has a non-{kind.__name__} entry in {value!r}") from None


_CONFIG_KEYS = (
    "algorithm", "tau", "k", "clusters", "repeats", "seed", "input", "labels",
    "format", "synthetic", "pca_dim", "normalize", "zero_diagonal", "out",
    "tau_grid", "k_grid",
)


def _load_config_file(path):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            raw = json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read config {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: invalid JSON: {exc}") from exc
    if not isinstance(raw, dict):
        raise InputError(f"{path}: config must be a JSON object")
    unknown = sorted(set(raw) - set(_CONFIG_KEYS))
    if unknown:
        raise InputError(f"{path}: unknown config key(s): {', '.join(unknown)}")
    return raw


def _merge_options(args):
    """Overlay command-line flags (when given) on config-file entries."""
    with error_stage("load"):
        file_values = _load_config_file(args.config) if args.config else {}
        merged = {}
        for key in _CONFIG_KEYS:
            flag = getattr(args, key, None)
            merged[key] = flag if flag is not None else file_values.get(key)
        return merged


def _typecheck(options):
    checks = (
        ("tau", float, (int, float)),
        ("k", int, (int,)),
        ("clusters", int, (int,)),
        ("repeats", int, (int,)),
        ("seed", int, (int,)),
        ("pca_dim", int, (int,)),
    )
    for key, cast, kinds in checks:
        value = options[key]
        if value is None or isinstance(value, bool):
            if isinstance(value, bool):
                raise InputError(f"config key {key!r} must be a number")
            continue
        if not isinstance(value, kinds):
            raise InputError(f"config key {key!r} must be {cast.__name__}")
        options[key] = cast(value)
    for key in ("normalize", "zero_diagonal"):
        if options[key] is not None and not isinstance(options[key], bool):
            raise InputError(f"config key {key!r} must be true or false")
    for key, allowed in (("algorithm", _ALGORITHM_CHOICES),
                         ("format", _FORMAT_CHOICES)):
        if options[key] is not None and options[key] not in allowed:
            raise InputError(
                f"config key {key!r} must be one of {', '.join(allowed)}"
            )


def _build_run_config(args):
    options = _merge_options(args)
    with error_stage("load"):
        _typecheck(options)
        defaults = RunConfig()
        seed = options["seed"] if options["seed"] is not None else defaults.seed
        if seed < 0:
            raise InputError(f"seed must be >= 0, got {seed}")
        synthetic = options["synthetic"]
        if synthetic is not None:
            synthetic = _parse_synthetic(synthetic, seed)
        chosen = {}
        for key in ("algorithm", "tau", "k", "clusters", "repeats", "input",
                    "labels", "format", "pca_dim", "normalize",
                    "zero_diagonal", "out"):
            value = options[key]
            chosen[key] = getattr(defaults, key) if value is None else value
        config = RunConfig(seed=seed, synthetic=synthetic, **chosen)
        if config.repeats < 1:
            raise InputError(f"repeats must be >= 1, got {config.repeats}")
        return config


def _build_sweep_config(args):
    base = _build_run_config(args)
    options = _merge_options(args)
    with error_stage("load"):
        tau_grid = _parse_grid(options["tau_grid"], float, "tau-grid")
        k_grid = _parse_grid(options["k_grid"], int, "k-grid")
        if tau_grid is None:
            tau_grid = (base.tau,)
        if k_grid is None:
            k_grid = (base.k,)
        bad_tau = [t for t in tau_grid if not t > 0]
        if bad_tau:
            raise InputError(f"tau-grid entries must be > 0, got {bad_tau}")
        bad_k = [k for k in k_grid if k < 1]
        if bad_k:
            raise InputError(f"k-grid entries must be >= 1, got {bad_k}")
        return SweepConfig(base=base, tau_grid=tau_grid, k_grid=k_grid)


def _cmd_run(args):
    config = _build_run_config(args)
    dataset = load_dataset(config)
    summary, _ = run_repeated(config, dataset=dataset)
    row = _run_row(config, dataset, summary)
    write_report(RUN_COLUMNS, [row], config.out)
    if config.out is not None:
        print(
            f"{config.algorithm}: acc_mean={summary.accuracy.mean:.4f} "
            f"nmi_mean={summary.nmi.mean:.4f} err_mean={summary.error.mean:.4f} "
            f"time_mean={summary.runtime_mean_seconds:.4f}s "
            f"({config.repeats} repeats) -> {config.out}"
        )
    return 0


def _cmd_sweep(args):
    config = _build_sweep_config(args)
    rows = run_sweep(config)
    write_report(SWEEP_COLUMNS, rows, config.base.out)
    if config.base.out is not None:
        print(
            f"{config.base.algorithm}: {len(rows)} grid cells "
            f"({len(config.tau_grid)} tau x {len(config.k_grid)} k) "
            f"-> {config.base.out}"
        )
    return 0


def _cmd_gen(args):
    config = _build_run_config(args)
    with error_stage("load"):
        if config.synthetic is None:
            raise InputError("gen requires --synthetic (or a config entry)")
        if config.out is None or config.labels is None:
            raise InputError("gen requires --out (matrix path) and --labels")
    dataset = generate_synthetic(config.synthetic)
    with error_stage("write"):
        try:
            save_matrix(dataset.matrix, config.out, format=config.format)
            save_labels(dataset.labels, config.labels)
        except OSError as exc:
            raise InputError(f"cannot write output: {exc}") from exc
    print(
        f"wrote {dataset.matrix.shape[0]}x{dataset.matrix.shape[1]} matrix "
        f"to {config.out} ({config.format}) and labels to {config.labels}"
    )
    return 0


def _add_common_options(parser):
    parser.add_argument("--config", metavar="PATH",
                        help="JSON config file; flags override its entries")
    parser.add_argument("--algorithm", choices=_ALGORITHM_CHOICES,
                        help="solver to benchmark (default fssc)")
    parser.add_argument("--tau", type=float,
                        help="balance parameter of the solver (default 1.0)")
    parser.add_argument("--k", type=int,
                        help="coefficients kept per column (default 4)")
    parser.add_argument("--clusters", type=int,
                        help="number of clusters u (default: classes in labels)")
    parser.add_argument("--input", metavar="PATH",
                        help="matrix file (features x samples)")
    parser.add_argument("--labels", metavar="PATH",
                        help="label file: one integer per line")
    parser.add_argument("--format", choices=_FORMAT_CHOICES,
                        help="matrix file format (default csv)")
    parser.add_argument("--synthetic", metavar="RECIPE",
                        help="generate data instead: m=50,d=4,u=5,p=40,sigma=0.01")
    parser.add_argument("--pca-dim", type=int, dest="pca_dim",
                        help="project features to this dimension first")
    parser.add_argument("--normalize", action=argparse.BooleanOptionalAction,
                        default=None,
                        help="scale sample columns to unit norm (default off)")
    parser.add_argument("--zero-diagonal", action=argparse.BooleanOptionalAction,
                        default=None, dest="zero_diagonal",
                        help="drop self-affinity before top-k (default on)")
    parser.add_argument("--repeats", type=int,
                        help="independent repetitions to average (default 20)")
    parser.add_argument("--seed", type=int,
                        help="experiment seed; repeat seeds derive from it")
    parser.add_argument("--out", metavar="PATH",
                        help="report CSV path (default: stdout)")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="sgclust",
        description="Self-representation subspace clustering benchmarks.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="run one experiment and report metrics")
    _add_common_options(p_run)
    p_run.set_defaults(handler=_cmd_run)

    p_sweep = sub.add_parser("sweep", help="run a tau x k parameter grid")
    _add_common_options(p_sweep)
    p_sweep.add_argument("--tau-grid", dest="tau_grid", metavar="LIST",
                         help="comma-separated tau values")
    p_sweep.add_argument("--k-grid", dest="k_grid", metavar="LIST",
                         help="comma-separated k values")
    p_sweep.set_defaults(handler=_cmd_sweep)

    p_gen = sub.add_parser("gen", help="write a synthetic dataset to files")
    _add_common_options(p_gen)
    p_gen.set_defaults(handler=_cmd_gen)

    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(args)
    except SgclustError as exc:
        stage = exc.stage or "setup"
        print(f"sgclust: error in {stage} stage: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
