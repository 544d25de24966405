import os

import numpy as np
import pytest

from tscbench.bench import (
    ExperimentPlan,
    MissingResults,
    aggregate,
    load_result_grid,
    result_path,
    run_experiment,
    run_single,
    worker_count,
)
from tscbench.data import Dataset
from tscbench.results import load_result_file
from tscbench.synthetic import write_dataset_pair


def _write_tiny_suite(data_dir, names=("AlphaSet", "BetaSet"), seed=0):
    rng = np.random.default_rng(seed)
    for name in names:
        m, n = 16, 24
        labels = np.arange(m) % 2
        X = rng.normal(0.0, 0.4, size=(m, n))
        X[labels == 1, 5:15] += 1.5
        train = Dataset(name, X, labels, ("0", "1"))
        X2 = rng.normal(0.0, 0.4, size=(m, n))
        X2[labels == 1, 5:15] += 1.5
        test = Dataset(name, X2, labels, ("0", "1"))
        write_dataset_pair(train, test, data_dir)
    return list(names)


@pytest.fixture
def tiny_plan(tmp_path):
    data_dir = str(tmp_path / "data")
    names = _write_tiny_suite(data_dir)
    return ExperimentPlan(
        data_dir=data_dir,
        results_dir=str(tmp_path / "results"),
        datasets=names,
        classifiers=("1nn-dtw",),
        resample_ids=(0, 1),
    )


def test_result_path_layout():
    p = result_path("res", "rocket", "GunPoint", 7)
    assert p == os.path.join("res", "rocket", "GunPoint_r7.csv")


def test_run_single_produces_complete_result(tiny_plan):
    r = run_single(tiny_plan.data_dir, "1nn-dtw", "AlphaSet", 0, 0)
    assert r.classifier == "1nn-dtw"
    assert r.dataset == "AlphaSet"
    assert len(r.true_labels) == 16
    assert r.probabilities.shape == (16, 2)
    assert r.fit_ms >= 0.0 and r.predict_ms >= 0.0
    assert "seed=" in r.metadata


def test_run_experiment_writes_all_cells(tiny_plan):
    done = run_experiment(tiny_plan)
    assert len(done) == 4  # 1 classifier x 2 datasets x 2 resamples
    for classifier, dataset, rid in tiny_plan.tasks():
        path = result_path(tiny_plan.results_dir, classifier, dataset, rid)
        assert os.path.exists(path)
        assert load_result_file(path).resample_id == rid


def test_run_experiment_idempotent(tiny_plan):
    assert len(run_experiment(tiny_plan)) == 4
    assert run_experiment(tiny_plan) == []  # complete files are skipped


def test_run_experiment_redoes_corrupt_files(tiny_plan):
    run_experiment(tiny_plan)
    path = result_path(tiny_plan.results_dir, "1nn-dtw", "AlphaSet", 0)
    with open(path, "w") as f:
        f.write("garbage\n")
    done = run_experiment(tiny_plan)
    assert done == [("1nn-dtw", "AlphaSet", 0)]
    assert load_result_file(path).dataset == "AlphaSet"


def test_end_to_end_determinism(tiny_plan, tmp_path):
    run_experiment(tiny_plan)
    other = ExperimentPlan(
        data_dir=tiny_plan.data_dir,
        results_dir=str(tmp_path / "results2"),
        datasets=tiny_plan.datasets,
        classifiers=tiny_plan.classifiers,
        resample_ids=tiny_plan.resample_ids,
    )
    run_experiment(other)
    for classifier, dataset, rid in tiny_plan.tasks():
        a = load_result_file(result_path(tiny_plan.results_dir, classifier, dataset, rid))
        b = load_result_file(result_path(other.results_dir, classifier, dataset, rid))
        # Identical modulo the timing fields and timestamp.
        assert np.array_equal(a.true_labels, b.true_labels)
        assert np.array_equal(a.pred_labels, b.pred_labels)
        assert np.array_equal(a.probabilities, b.probabilities)
        assert a.metadata == b.metadata


def test_load_result_grid_reports_missing(tiny_plan):
    run_experiment(tiny_plan)
    os.remove(result_path(tiny_plan.results_dir, "1nn-dtw", "BetaSet", 1))
    with pytest.raises(MissingResults) as err:
        load_result_grid(
            tiny_plan.results_dir,
            tiny_plan.classifiers,
            tiny_plan.datasets,
            tiny_plan.resample_ids,
        )
    assert err.value.missing == [("1nn-dtw", "BetaSet", 1)]
    assert "BetaSet" in str(err.value)


def test_aggregate_outputs(tmp_path):
    data_dir = str(tmp_path / "data")
    names = _write_tiny_suite(data_dir)
    plan = ExperimentPlan(
        data_dir=data_dir,
        results_dir=str(tmp_path / "results"),
        datasets=names,
        classifiers=("1nn-dtw", "tsf"),
        resample_ids=(0, 1),
    )
    run_experiment(plan)
    out_dir = str(tmp_path / "out")
    M = aggregate(
        plan.results_dir, plan.classifiers, names, plan.resample_ids, out_dir,
        data_dir=data_dir,
    )
    assert M.shape == (2, 2)
    assert ((0.0 <= M) & (M <= 1.0)).all()
    produced = sorted(os.listdir(out_dir))
    for expected in (
        "mean_acc.csv",
        "mean_balacc.csv",
        "mean_auroc.csv",
        "mean_nll.csv",
        "avg_ranks.csv",
        "pairwise_pvalues.csv",
        "holm_rejections.csv",
        "cliques.txt",
        "rank_diagram.svg",
        "scatter_top2.svg",
    ):
        assert expected in produced

    with open(os.path.join(out_dir, "mean_acc.csv")) as f:
        lines = f.read().splitlines()
    assert lines[0] == "dataset,1nn-dtw,tsf"
    assert len(lines) == 3

    # Re-aggregating the same grid reproduces every report byte-for-byte.
    out_dir2 = str(tmp_path / "out2")
    aggregate(
        plan.results_dir, plan.classifiers, names, plan.resample_ids, out_dir2,
        data_dir=data_dir,
    )
    for name in produced:
        with open(os.path.join(out_dir, name), "rb") as f:
            first = f.read()
        with open(os.path.join(out_dir2, name), "rb") as f:
            assert f.read() == first


def test_aggregate_missing_results(tiny_plan, tmp_path):
    with pytest.raises(MissingResults):
        aggregate(
            tiny_plan.results_dir,
            tiny_plan.classifiers,
            tiny_plan.datasets,
            tiny_plan.resample_ids,
            str(tmp_path / "out"),
        )


def test_worker_count_env(monkeypatch):
    monkeypatch.delenv("TSCBENCH_THREADS", raising=False)
    assert worker_count() == 1
    monkeypatch.setenv("TSCBENCH_THREADS", "4")
    assert worker_count() == 4
    monkeypatch.setenv("TSCBENCH_THREADS", "bogus")
    assert worker_count() == 1
    monkeypatch.setenv("TSCBENCH_THREADS", "0")
    assert worker_count() == 1


def test_run_experiment_parallel(tiny_plan, monkeypatch):
    monkeypatch.setenv("TSCBENCH_THREADS", "2")
    done = run_experiment(tiny_plan)
    assert sorted(done) == sorted(tiny_plan.tasks())


def test_plan_validation():
    with pytest.raises(ValueError):
        ExperimentPlan("d", "r", ("A",), ("1nn-dtw",), resample_ids=(-1,))
