"""Shared linear head: ridge regression over one-vs-rest targets.

The regularisation strength is chosen from a fixed grid by efficient
leave-one-out error, computed in closed form from one SVD of the training
matrix rather than m refits.
"""

import numpy as np

__all__ = ["DEFAULT_ALPHA_GRID", "RidgeClassifierCV", "loo_residuals", "softmax"]

DEFAULT_ALPHA_GRID = np.logspace(-3, 3, 10)


def softmax(scores):
    scores = np.asarray(scores, dtype=np.float64)
    z = scores - scores.max(axis=-1, keepdims=True)
    e = np.exp(z)
    return e / e.sum(axis=-1, keepdims=True)


def loo_residuals(X, Y, alpha, svd=None):
    """Leave-one-out residuals of ridge on (X, Y) via the hat-matrix identity.

    X is used as given (no standardisation, no implicit intercept); Y may hold
    several target columns. Returns an array of the same shape as Y whose
    entry (i, c) is y_ic minus the prediction of a model fitted without row i.
    """
    if svd is None:
        svd = np.linalg.svd(X, full_matrices=False)
    U, s, _ = svd
    d = s**2 / (s**2 + alpha)
    UtY = U.T @ Y
    fitted = U @ (d[:, None] * UtY)
    h = np.einsum("ij,j,ij->i", U, d, U)
    return (Y - fitted) / (1.0 - h)[:, None]


class RidgeClassifierCV:
    """One-vs-rest ridge with internal leave-one-out alpha selection.

    Features are standardised (zero-variance columns become zeros) and the
    intercept is carried as a penalised constant column, so the closed-form
    LOO identity applies to the full solved system. Scores are mapped to
    probabilities with a softmax.
    """

    def __init__(self, alpha_grid=None):
        self.alpha_grid = (
            DEFAULT_ALPHA_GRID if alpha_grid is None else np.asarray(alpha_grid, float)
        )
        self.alpha_ = None
        self.coef_ = None  # (n_features + 1, n_classes); last row is intercept
        self.mean_ = None
        self.std_ = None
        self.n_classes_ = None

    def _standardise(self, X):
        Xs = (X - self.mean_) / self.std_
        return np.hstack([Xs, np.ones((X.shape[0], 1))])

    def fit(self, X, y, n_classes=None):
        X = np.asarray(X, dtype=np.float64)
        y = np.asarray(y, dtype=np.int64)
        if X.ndim != 2 or X.shape[0] < 2:
            raise ValueError("need at least 2 training cases")
        present = np.unique(y)
        if len(present) < 2:
            raise ValueError("training data contains a single class")
        self.n_classes_ = int(n_classes) if n_classes is not None else int(y.max()) + 1

        self.mean_ = X.mean(axis=0)
        std = X.std(axis=0)
        self.std_ = np.where(std > 0.0, std, 1.0)
        Xa = self._standardise(X)

        Y = np.full((X.shape[0], self.n_classes_), -1.0)
        Y[np.arange(len(y)), y] = 1.0

        svd = np.linalg.svd(Xa, full_matrices=False)
        best_sse = np.inf
        for alpha in self.alpha_grid:
            sse = float(np.sum(loo_residuals(Xa, Y, alpha, svd=svd) ** 2))
            if sse < best_sse:
                best_sse = sse
                self.alpha_ = float(alpha)
        U, s, Vt = svd
        f = s / (s**2 + self.alpha_)
        self.coef_ = Vt.T @ (f[:, None] * (U.T @ Y))
        return self

    def decision_scores(self, X):
        X = np.asarray(X, dtype=np.float64)
        if X.shape[1] != len(self.mean_):
            raise ValueError(
                f"feature count {X.shape[1]} does not match model ({len(self.mean_)})"
            )
        return self._standardise(X) @ self.coef_

    def predict(self, X):
        """Return (labels, probability matrix); label is the argmax score."""
        scores = self.decision_scores(X)
        return scores.argmax(axis=1), softmax(scores)
