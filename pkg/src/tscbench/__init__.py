"""Time series classification engine and benchmark harness."""

from .data import (
    Dataset,
    ResamplePlan,
    load_dataset_pair,
    load_ts_file,
    parse_ts,
    stratified_resample,
    write_ts,
)
from .registry import classifier_names, make_classifier

__version__ = "0.1.0"

__all__ = [
    "Dataset",
    "ResamplePlan",
    "parse_ts",
    "write_ts",
    "load_ts_file",
    "load_dataset_pair",
    "stratified_resample",
    "make_classifier",
    "classifier_names",
    "__version__",
]
