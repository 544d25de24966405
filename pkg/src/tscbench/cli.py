"""Command line interface: run experiments, aggregate results, list classifiers.

Exit codes: 0 success, 1 usage error, 2 data error.
"""

import argparse
import sys

from .bench import ExperimentPlan, MissingResults, aggregate, run_experiment
from .data import TsFormatError
from .registry import UnknownClassifier, classifier_names

__all__ = ["main"]

USAGE_ERROR = 1
DATA_ERROR = 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"error: {message}", file=sys.stderr)
        raise SystemExit(USAGE_ERROR)


def parse_resamples(spec):
    """Parse '0..29', '0,3,7' or '5' into a tuple of resample ids."""
    ids = []
    for chunk in spec.split(","):
        chunk = chunk.strip()
        if ".." in chunk:
            lo, hi = chunk.split("..", 1)
            ids.extend(range(int(lo), int(hi) + 1))
        else:
            ids.append(int(chunk))
    if not ids or any(i < 0 for i in ids):
        raise ValueError(f"bad resample specification {spec!r}")
    return tuple(ids)


def build_parser():
    parser = _Parser(prog="tscbench")
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="run (classifier x dataset x resample) cells")
    run.add_argument("--data-dir", required=True)
    run.add_argument("--results-dir", required=True)
    run.add_argument("--classifier", action="append", required=True)
    run.add_argument("--dataset", action="append", required=True)
    run.add_argument("--resamples", default="0")
    run.add_argument("--seed", type=int, default=0)
    run.add_argument("--verbose", action="store_true")

    agg = sub.add_parser("aggregate", help="aggregate a results grid into reports")
    agg.add_argument("--results-dir", required=True)
    agg.add_argument("--out", required=True)
    agg.add_argument("--data-dir", default=None,
                     help="dataset dir for train class frequencies (AUROC weights)")
    agg.add_argument("--classifier", action="append", required=True)
    agg.add_argument("--dataset", action="append", required=True)
    agg.add_argument("--resamples", default="0")
    agg.add_argument("--metric", choices=["acc", "balacc", "auroc", "nll"],
                     default="acc")
    agg.add_argument("--alpha", type=float, default=0.05)

    sub.add_parser("list-classifiers", help="print registered classifier names")
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)

    if args.command == "list-classifiers":
        for name in classifier_names():
            print(name)
        return 0

    try:
        resamples = parse_resamples(args.resamples)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_ERROR

    if args.command == "run":
        unknown = [c for c in args.classifier if c not in classifier_names()]
        if unknown:
            print(
                f"error: unknown classifier(s) {', '.join(unknown)}; "
                f"registered: {', '.join(classifier_names())}",
                file=sys.stderr,
            )
            return USAGE_ERROR
        plan = ExperimentPlan(
            data_dir=args.data_dir,
            results_dir=args.results_dir,
            datasets=args.dataset,
            classifiers=args.classifier,
            resample_ids=resamples,
            experiment_seed=args.seed,
        )
        try:
            done = run_experiment(plan, verbose=args.verbose)
        except (TsFormatError, OSError, UnknownClassifier) as exc:
            print(f"error: {exc}", file=sys.stderr)
            return DATA_ERROR
        print(f"ran {len(done)} cells ({len(list(plan.tasks())) - len(done)} cached)")
        return 0

    if args.command == "aggregate":
        try:
            aggregate(
                results_dir=args.results_dir,
                classifiers=args.classifier,
                datasets=args.dataset,
                resample_ids=resamples,
                out_dir=args.out,
                data_dir=args.data_dir,
                metric=args.metric,
                alpha=args.alpha,
            )
        except (MissingResults, TsFormatError, OSError, ValueError) as exc:
            print(f"error: {exc}", file=sys.stderr)
            return DATA_ERROR
        print(f"reports written to {args.out}")
        return 0

    return USAGE_ERROR


if __name__ == "__main__":
    sys.exit(main())
