"""End-to-end benchmark: run a classifier grid, aggregate, read the reports.

Materialises the three synthetic datasets, runs a small grid of classifiers
over a few stratified resamples, and aggregates per-run result files into
mean-metric tables, average ranks, pairwise significance tests and SVG
figures. Re-running is a no-op: completed result files are skipped.
"""

import os
import tempfile

from tscbench.bench import ExperimentPlan, aggregate, run_experiment
from tscbench.synthetic import make_benchmark_suite


def main():
    root = tempfile.mkdtemp(prefix="tscbench_demo_")
    data_dir = os.path.join(root, "data")
    results_dir = os.path.join(root, "results")
    out_dir = os.path.join(root, "reports")

    names = make_benchmark_suite(data_dir)
    print("datasets:", ", ".join(names))

    classifiers = ("1nn-dtw", "minirocket", "tsf")
    resamples = (0, 1, 2)
    plan = ExperimentPlan(
        data_dir=data_dir,
        results_dir=results_dir,
        datasets=names,
        classifiers=classifiers,
        resample_ids=resamples,
    )
    done = run_experiment(plan, verbose=True)
    print(f"ran {len(done)} cells")
    print(f"second invocation runs {len(run_experiment(plan))} cells (all cached)\n")

    M = aggregate(results_dir, classifiers, names, resamples, out_dir,
                  data_dir=data_dir)
    print("mean accuracy (datasets x classifiers):")
    header = " " * 20 + "".join(f"{c:>12}" for c in classifiers)
    print(header)
    for name, row in zip(names, M):
        print(f"{name:<20}" + "".join(f"{v:>12.3f}" for v in row))

    print("\nreports in", out_dir)
    for f in sorted(os.listdir(out_dir)):
        print(" ", f)


if __name__ == "__main__":
    main()
