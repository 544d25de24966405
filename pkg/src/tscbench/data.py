"""Dataset container, ``.ts`` file parsing/serialisation and stratified resampling."""

import warnings
from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "Dataset",
    "ResamplePlan",
    "TsFormatError",
    "MissingDataSection",
    "MissingClassLabels",
    "RaggedSeries",
    "UnknownClassLabel",
    "BadValueToken",
    "parse_ts",
    "write_ts",
    "load_ts_file",
    "load_dataset_pair",
    "stratified_resample",
    "fnv1a64",
    "derive_task_seed",
]


class TsFormatError(ValueError):
    """A ``.ts`` stream violates the expected format."""


class MissingDataSection(TsFormatError):
    pass


class MissingClassLabels(TsFormatError):
    pass


class RaggedSeries(TsFormatError):
    pass


class UnknownClassLabel(TsFormatError):
    pass


class BadValueToken(TsFormatError):
    pass


@dataclass(frozen=True)
class Dataset:
    """A labelled collection of equal-length univariate series.

    ``series`` is an (n_cases, series_length) float array, ``labels`` holds
    class indices into ``class_names``. Arrays are frozen after construction
    so instances can be shared across parallel workers.
    """

    name: str
    series: np.ndarray
    labels: np.ndarray
    class_names: tuple

    def __post_init__(self):
        series = np.ascontiguousarray(self.series, dtype=np.float64)
        labels = np.ascontiguousarray(self.labels, dtype=np.int64)
        if series.ndim != 2 or series.shape[0] < 1 or series.shape[1] < 1:
            raise ValueError("series must be a non-empty 2d array")
        if labels.shape != (series.shape[0],):
            raise ValueError("labels length must match number of cases")
        if len(self.class_names) < 1:
            raise ValueError("class_names must be non-empty")
        if labels.min() < 0 or labels.max() >= len(self.class_names):
            raise ValueError("label index out of range")
        series.flags.writeable = False
        labels.flags.writeable = False
        object.__setattr__(self, "series", series)
        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "class_names", tuple(self.class_names))

    @property
    def n_cases(self):
        return self.series.shape[0]

    @property
    def series_length(self):
        return self.series.shape[1]

    @property
    def n_classes(self):
        return len(self.class_names)

    def class_counts(self):
        return np.bincount(self.labels, minlength=self.n_classes)

    def __eq__(self, other):
        if not isinstance(other, Dataset):
            return NotImplemented
        return (
            self.name == other.name
            and self.class_names == other.class_names
            and np.array_equal(self.series, other.series)
            and np.array_equal(self.labels, other.labels)
        )


@dataclass(frozen=True)
class ResamplePlan:
    """Identifies one seeded train/test re-split; id 0 is the identity plan."""

    resample_id: int
    experiment_seed: int = 0

    def __post_init__(self):
        if self.resample_id < 0:
            raise ValueError("resample_id must be non-negative")


_MASK64 = (1 << 64) - 1


def fnv1a64(text):
    """64-bit FNV-1a hash of a string; platform independent."""
    h = 0xCBF29CE484222325
    for byte in text.encode("utf-8"):
        h ^= byte
        h = (h * 0x100000001B3) & _MASK64
    return h


def _splitmix64(x):
    x = (x + 0x9E3779B97F4A7C15) & _MASK64
    x = ((x ^ (x >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    x = ((x ^ (x >> 27)) * 0x94D049BB133111EB) & _MASK64
    return x ^ (x >> 31)


def derive_task_seed(experiment_seed, dataset_name, resample_id):
    """Mix (experiment seed, dataset name, resample id) into one 64-bit seed."""
    h = _splitmix64(experiment_seed & _MASK64)
    h = _splitmix64(h ^ fnv1a64(dataset_name))
    h = _splitmix64(h ^ (resample_id & _MASK64))
    return h


_KNOWN_DIRECTIVES = {
    "problemname",
    "classlabel",
    "equallength",
    "serieslength",
    "univariate",
    "timestamps",
    "missing",
    "dimension",
    "data",
}


def parse_ts(text):
    """Parse a ``.ts`` character stream into a :class:`Dataset`.

    Header directives (lines starting ``@``) are matched case-insensitively;
    unknown directives are ignored with a warning. Cases after ``@data`` are
    comma-separated reals followed by ``:`` and a label drawn from the
    ``@classLabel`` declaration.
    """
    name = "unnamed"
    class_names = None
    equal_length = True
    in_data = False
    rows = []
    labels = []

    for raw_line in text.splitlines():
        line = raw_line.strip()
        if not line or line.startswith("#"):
            continue
        if not in_data and line.startswith("@"):
            parts = line.split()
            directive = parts[0][1:].lower()
            args = parts[1:]
            if directive == "data":
                in_data = True
            elif directive == "problemname":
                if args:
                    name = args[0]
            elif directive == "classlabel":
                if not args or args[0].lower() != "true":
                    raise MissingClassLabels(
                        "@classLabel must be 'true' followed by the label list"
                    )
                if len(args) < 2:
                    raise MissingClassLabels("@classLabel lists no labels")
                class_names = tuple(args[1:])
            elif directive == "equallength":
                equal_length = bool(args) and args[0].lower() == "true"
            elif directive not in _KNOWN_DIRECTIVES:
                warnings.warn(f"ignoring unknown directive @{parts[0][1:]}")
            continue
        if not in_data:
            # Stray content before @data; treat as malformed header.
            raise TsFormatError(f"unexpected line before @data: {line!r}")
        parts = line.split(":")
        if len(parts) < 2:
            raise TsFormatError(f"case line has no label separator: {line!r}")
        if len(parts) > 2:
            raise TsFormatError(
                "multivariate case lines are not supported (univariate only)"
            )
        value_part, label = parts[0], parts[1].strip()
        values = []
        for tok in value_part.split(","):
            tok = tok.strip()
            try:
                values.append(float(tok))
            except ValueError:
                raise BadValueToken(f"non-numeric value token {tok!r}") from None
        if class_names is None:
            raise MissingClassLabels("case data found but no @classLabel declared")
        if label not in class_names:
            raise UnknownClassLabel(
                f"label {label!r} not in @classLabel list {class_names}"
            )
        rows.append(values)
        labels.append(class_names.index(label))

    if not in_data:
        raise MissingDataSection("stream has no @data section")
    if not rows:
        raise TsFormatError("no cases after @data")
    lengths = {len(r) for r in rows}
    if len(lengths) > 1:
        if equal_length:
            raise RaggedSeries(f"rows have differing lengths {sorted(lengths)}")
        raise TsFormatError("unequal-length series are not supported")
    return Dataset(
        name=name,
        series=np.array(rows, dtype=np.float64),
        labels=np.array(labels, dtype=np.int64),
        class_names=class_names,
    )


def _format_value(v):
    # repr of a Python float is the shortest decimal that round-trips.
    return repr(float(v))


def write_ts(dataset):
    """Serialise a dataset so that ``parse_ts(write_ts(d))`` reconstructs ``d``."""
    if len(dataset.class_names) == 0:
        raise ValueError("dataset has no class names")
    lines = [
        f"@problemName {dataset.name}",
        "@timeStamps false",
        "@univariate true",
        "@equalLength true",
        f"@seriesLength {dataset.series_length}",
        "@classLabel true " + " ".join(dataset.class_names),
        "@data",
    ]
    for row, label in zip(dataset.series, dataset.labels):
        values = ",".join(_format_value(v) for v in row)
        lines.append(f"{values}:{dataset.class_names[label]}")
    return "\n".join(lines) + "\n"


def load_ts_file(path):
    with open(path, "r", encoding="utf-8") as f:
        return parse_ts(f.read())


def load_dataset_pair(data_dir, name):
    """Load ``<dir>/<name>/<name>_TRAIN.ts`` and ``_TEST.ts``."""
    train = load_ts_file(f"{data_dir}/{name}/{name}_TRAIN.ts")
    test = load_ts_file(f"{data_dir}/{name}/{name}_TEST.ts")
    return train, test


def stratified_resample(train, test, plan):
    """Re-split the pooled cases, keeping per-class counts of each split exact.

    Resample 0 returns the original split unchanged. Other ids shuffle the
    pooled cases of each class deterministically, seeded from
    (experiment_seed, dataset name, resample_id).
    """
    if train.class_names != test.class_names:
        raise ValueError("train and test must share class_names")
    if plan.resample_id == 0:
        return train, test

    train_counts = train.class_counts()
    test_counts = test.class_counts()
    for c, (n_tr, n_te) in enumerate(zip(train_counts, test_counts)):
        if n_te > 0 and n_tr == 0:
            raise ValueError(
                f"class {train.class_names[c]!r} present in test but absent "
                "from the train pool"
            )

    pool_series = np.vstack([train.series, test.series])
    pool_labels = np.concatenate([train.labels, test.labels])
    seed = derive_task_seed(plan.experiment_seed, train.name, plan.resample_id)
    rng = np.random.default_rng(seed)

    train_idx = []
    test_idx = []
    for c in range(len(train.class_names)):
        members = np.flatnonzero(pool_labels == c)
        members = members[rng.permutation(len(members))]
        train_idx.append(members[: train_counts[c]])
        test_idx.append(members[train_counts[c] :])
    train_idx = np.concatenate(train_idx)
    test_idx = np.concatenate(test_idx)

    new_train = Dataset(
        train.name, pool_series[train_idx], pool_labels[train_idx], train.class_names
    )
    new_test = Dataset(
        test.name, pool_series[test_idx], pool_labels[test_idx], test.class_names
    )
    return new_train, new_test
