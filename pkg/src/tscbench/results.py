"""Per-run result files: one text file per (classifier, dataset, resample).

Format:
  line 1   dataset,classifier,resample_id,timestamp_iso8601
  line 2   parameter/metadata string (key=value pairs)
  line 3   accuracy,fit_ms,predict_ms
  line 4+  true_idx,pred_idx,,p_0,...,p_{c-1}   (probabilities to 6 decimals)
"""

import os
import tempfile
from dataclasses import dataclass, field
from datetime import datetime, timezone

import numpy as np

__all__ = ["ResultSet", "write_result_file", "parse_result_text", "load_result_file"]

# 6-decimal storage makes parsed rows sum to 1 only to ~5e-7 per class.
_PROB_SUM_TOL = 1e-4


@dataclass
class ResultSet:
    classifier: str
    dataset: str
    resample_id: int
    true_labels: np.ndarray
    pred_labels: np.ndarray
    probabilities: np.ndarray
    fit_ms: float = 0.0
    predict_ms: float = 0.0
    metadata: str = ""
    timestamp: str = ""

    def __post_init__(self):
        self.true_labels = np.asarray(self.true_labels, dtype=np.int64)
        self.pred_labels = np.asarray(self.pred_labels, dtype=np.int64)
        self.probabilities = np.asarray(self.probabilities, dtype=np.float64)
        n = len(self.true_labels)
        if len(self.pred_labels) != n or self.probabilities.shape[0] != n:
            raise ValueError("inconsistent result lengths")
        sums = self.probabilities.sum(axis=1)
        if not np.allclose(sums, 1.0, atol=_PROB_SUM_TOL):
            raise ValueError("probability rows must sum to 1")
        if not self.timestamp:
            self.timestamp = datetime.now(timezone.utc).isoformat()

    @property
    def accuracy(self):
        return float((self.true_labels == self.pred_labels).mean())

    @property
    def n_classes(self):
        return self.probabilities.shape[1]


def format_result(result):
    lines = [
        f"{result.dataset},{result.classifier},{result.resample_id},{result.timestamp}",
        result.metadata,
        f"{result.accuracy},{result.fit_ms},{result.predict_ms}",
    ]
    for t, p, probs in zip(result.true_labels, result.pred_labels, result.probabilities):
        prob_str = ",".join(f"{v:.6f}" for v in probs)
        lines.append(f"{t},{p},,{prob_str}")
    return "\n".join(lines) + "\n"


def write_result_file(result, path):
    """Atomic write: temp file in the target directory, then rename."""
    directory = os.path.dirname(path) or "."
    os.makedirs(directory, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=directory, suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as f:
            f.write(format_result(result))
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def parse_result_text(text):
    lines = text.splitlines()
    if len(lines) < 4:
        raise ValueError("result file truncated")
    dataset, classifier, resample_id, timestamp = lines[0].split(",", 3)
    metadata = lines[1]
    acc_str, fit_ms, predict_ms = lines[2].split(",")
    true_labels, pred_labels, probabilities = [], [], []
    for line in lines[3:]:
        if not line.strip():
            continue
        head, prob_part = line.split(",,", 1)
        t, p = head.split(",")
        true_labels.append(int(t))
        pred_labels.append(int(p))
        probabilities.append([float(v) for v in prob_part.split(",")])
    result = ResultSet(
        classifier=classifier,
        dataset=dataset,
        resample_id=int(resample_id),
        true_labels=np.array(true_labels),
        pred_labels=np.array(pred_labels),
        probabilities=np.array(probabilities),
        fit_ms=float(fit_ms),
        predict_ms=float(predict_ms),
        metadata=metadata,
        timestamp=timestamp,
    )
    if abs(result.accuracy - float(acc_str)) > 1e-9:
        raise ValueError("stored accuracy does not match predictions")
    return result


def load_result_file(path):
    with open(path, "r", encoding="utf-8") as f:
        return parse_result_text(f.read())
