"""Experiment orchestration: run (classifier x dataset x resample) grids,
persist result files and aggregate them into comparison reports."""

import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .data import ResamplePlan, derive_task_seed, load_dataset_pair, stratified_resample
from .plots import rank_diagram_svg, scatter_svg
from .registry import make_classifier
from .results import ResultSet, load_result_file, write_result_file
from .stats import compute_metrics, ranks_and_cliques

__all__ = [
    "ExperimentPlan",
    "MissingResults",
    "run_experiment",
    "run_single",
    "aggregate",
    "result_path",
    "worker_count",
]

METRICS = ("acc", "balacc", "auroc", "nll")


class MissingResults(RuntimeError):
    """A results grid has holes; carries the list of missing cells."""

    def __init__(self, missing):
        self.missing = list(missing)
        cells = ", ".join(
            f"({c}, {d}, resample {r})" for c, d, r in self.missing[:10]
        )
        extra = "" if len(self.missing) <= 10 else f" and {len(self.missing) - 10} more"
        super().__init__(f"missing result files: {cells}{extra}")


@dataclass(frozen=True)
class ExperimentPlan:
    data_dir: str
    results_dir: str
    datasets: tuple
    classifiers: tuple
    resample_ids: tuple = (0,)
    experiment_seed: int = 0

    def __post_init__(self):
        object.__setattr__(self, "datasets", tuple(self.datasets))
        object.__setattr__(self, "classifiers", tuple(self.classifiers))
        object.__setattr__(self, "resample_ids", tuple(self.resample_ids))
        if any(r < 0 for r in self.resample_ids):
            raise ValueError("resample ids must be non-negative")

    def tasks(self):
        for classifier in self.classifiers:
            for dataset in self.datasets:
                for resample_id in self.resample_ids:
                    yield classifier, dataset, resample_id


def result_path(results_dir, classifier, dataset, resample_id):
    return os.path.join(results_dir, classifier, f"{dataset}_r{resample_id}.csv")


def _is_complete(path, expected_cases):
    if not os.path.exists(path):
        return False
    try:
        result = load_result_file(path)
    except (ValueError, OSError):
        return False
    return len(result.true_labels) == expected_cases


def run_single(data_dir, classifier_name, dataset_name, resample_id, experiment_seed):
    """Fit and evaluate one (classifier, dataset, resample) cell."""
    train, test = load_dataset_pair(data_dir, dataset_name)
    plan = ResamplePlan(resample_id, experiment_seed)
    train, test = stratified_resample(train, test, plan)
    seed = derive_task_seed(experiment_seed, f"{classifier_name}/{dataset_name}",
                            resample_id)
    clf = make_classifier(classifier_name, seed=seed)

    t0 = time.perf_counter()
    clf.fit(train)
    fit_ms = (time.perf_counter() - t0) * 1000.0
    t0 = time.perf_counter()
    pred_labels, probabilities = clf.predict(test)
    predict_ms = (time.perf_counter() - t0) * 1000.0

    metadata = (
        f"seed={seed},experiment_seed={experiment_seed},"
        f"resample=stratified_exact_counts,{clf.metadata()}"
    )
    return ResultSet(
        classifier=classifier_name,
        dataset=dataset_name,
        resample_id=resample_id,
        true_labels=test.labels,
        pred_labels=pred_labels,
        probabilities=probabilities,
        fit_ms=fit_ms,
        predict_ms=predict_ms,
        metadata=metadata,
    )


def _run_task(args):
    plan_dirs, classifier, dataset, resample_id, experiment_seed = args
    data_dir, results_dir = plan_dirs
    result = run_single(data_dir, classifier, dataset, resample_id, experiment_seed)
    write_result_file(result, result_path(results_dir, classifier, dataset, resample_id))
    return classifier, dataset, resample_id


def worker_count():
    """Worker pool size; capped by the TSCBENCH_THREADS environment variable."""
    raw = os.environ.get("TSCBENCH_THREADS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def run_experiment(plan, verbose=False):
    """Run all cells of the plan, skipping complete result files.

    Returns the list of (classifier, dataset, resample_id) cells actually run.
    """
    pending = []
    for classifier, dataset, resample_id in plan.tasks():
        path = result_path(plan.results_dir, classifier, dataset, resample_id)
        _, test = load_dataset_pair(plan.data_dir, dataset)
        if _is_complete(path, test.n_cases):
            continue
        pending.append(
            (
                (plan.data_dir, plan.results_dir),
                classifier,
                dataset,
                resample_id,
                plan.experiment_seed,
            )
        )

    workers = worker_count()
    done = []
    if workers == 1 or len(pending) <= 1:
        for task in pending:
            done.append(_run_task(task))
            if verbose:
                print("completed", done[-1])
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            for cell in pool.map(_run_task, pending):
                done.append(cell)
                if verbose:
                    print("completed", cell)
    return done


def _write(path, text):
    with open(path, "w", encoding="utf-8") as f:
        f.write(text)


def load_result_grid(results_dir, classifiers, datasets, resample_ids):
    """Load the full grid; raise MissingResults enumerating any holes."""
    grid = {}
    missing = []
    for classifier in classifiers:
        for dataset in datasets:
            for resample_id in resample_ids:
                path = result_path(results_dir, classifier, dataset, resample_id)
                if not os.path.exists(path):
                    missing.append((classifier, dataset, resample_id))
                    continue
                grid[(classifier, dataset, resample_id)] = load_result_file(path)
    if missing:
        raise MissingResults(missing)
    return grid


def aggregate(
    results_dir,
    classifiers,
    datasets,
    resample_ids,
    out_dir,
    data_dir=None,
    metric="acc",
    alpha=0.05,
):
    """Aggregate a complete results grid into report files.

    Writes per-metric mean tables, average ranks, the pairwise Wilcoxon/Holm
    matrix, the clique listing, a rank-diagram SVG and a scatter SVG of the
    two best-ranked classifiers. Returns the (datasets x classifiers) mean
    matrix for the requested metric.
    """
    if metric not in METRICS:
        raise ValueError(f"metric must be one of {METRICS}")
    classifiers = list(classifiers)
    datasets = list(datasets)
    resample_ids = list(resample_ids)
    grid = load_result_grid(results_dir, classifiers, datasets, resample_ids)

    train_freqs = {}
    for dataset in datasets:
        if data_dir is not None:
            train, _ = load_dataset_pair(data_dir, dataset)
            train_freqs[dataset] = train.class_counts()
        else:
            # Fall back to test-set label frequencies from resample 0 results.
            any_result = grid[(classifiers[0], dataset, resample_ids[0])]
            train_freqs[dataset] = np.bincount(
                any_result.true_labels, minlength=any_result.n_classes
            )

    mean = {m: np.zeros((len(datasets), len(classifiers))) for m in METRICS}
    for ci, classifier in enumerate(classifiers):
        for di, dataset in enumerate(datasets):
            per_resample = {m: [] for m in METRICS}
            for resample_id in resample_ids:
                r = grid[(classifier, dataset, resample_id)]
                values = compute_metrics(
                    r.true_labels, r.pred_labels, r.probabilities, train_freqs[dataset]
                )
                for m in METRICS:
                    per_resample[m].append(values[m])
            for m in METRICS:
                mean[m][di, ci] = float(np.mean(per_resample[m]))

    os.makedirs(out_dir, exist_ok=True)
    for m in METRICS:
        rows = ["dataset," + ",".join(classifiers)]
        for di, dataset in enumerate(datasets):
            rows.append(
                dataset + "," + ",".join(f"{v:.6f}" for v in mean[m][di])
            )
        _write(os.path.join(out_dir, f"mean_{m}.csv"), "\n".join(rows) + "\n")

    higher_is_better = metric != "nll"
    M = mean[metric]
    avg, cliques, p_matrix, rejected = ranks_and_cliques(
        M, alpha=alpha, higher_is_better=higher_is_better
    )

    rows = ["classifier,avg_rank"]
    for ci in np.argsort(avg, kind="stable"):
        rows.append(f"{classifiers[ci]},{avg[ci]:.6f}")
    _write(os.path.join(out_dir, "avg_ranks.csv"), "\n".join(rows) + "\n")

    header = "," + ",".join(classifiers)
    p_rows = [header]
    r_rows = [header]
    for i, c in enumerate(classifiers):
        p_rows.append(c + "," + ",".join(f"{v:.6f}" for v in p_matrix[i]))
        r_rows.append(c + "," + ",".join(str(int(v)) for v in rejected[i]))
    _write(os.path.join(out_dir, "pairwise_pvalues.csv"), "\n".join(p_rows) + "\n")
    _write(os.path.join(out_dir, "holm_rejections.csv"), "\n".join(r_rows) + "\n")

    clique_lines = [
        " ".join(classifiers[i] for i in clique) for clique in cliques
    ] or ["(none)"]
    _write(os.path.join(out_dir, "cliques.txt"), "\n".join(clique_lines) + "\n")

    _write(
        os.path.join(out_dir, "rank_diagram.svg"),
        rank_diagram_svg(classifiers, avg, cliques),
    )
    order = np.argsort(avg, kind="stable")
    if len(order) >= 2:
        a, b = int(order[0]), int(order[1])
        lo, hi = (0.0, 1.0) if higher_is_better else (0.0, max(1.0, M.max()))
        _write(
            os.path.join(out_dir, "scatter_top2.svg"),
            scatter_svg(M[:, b], M[:, a], classifiers[b], classifiers[a], lo, hi),
        )
    return M
