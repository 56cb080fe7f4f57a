"""Minimal reference classifiers for judging resampling quality.

Three binary learners with fixed, conventional defaults: Gaussian naive
Bayes (variance-smoothed), logistic regression trained by full-batch
gradient descent on the log-loss, and a CART-style decision tree grown
greedily on Gini impurity. All are deterministic; the tree breaks split
ties toward the lowest feature index and lowest threshold.

Logistic regression standardizes features internally for a stable fixed
step size, then folds the scaling back into the reported weight vector and
bias, so the fitted parameters always apply to raw feature space.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from .dataset import LabeledDataset
from .errors import UnsupportedTargetError

__all__ = [
    "MODEL_KINDS",
    "GaussianNB",
    "LogisticRegression",
    "DecisionTree",
    "fit",
    "predict",
    "model_to_json",
    "model_from_json",
]

MODEL_KINDS = ("gnb", "logreg", "tree")


def _check_training_data(X: np.ndarray, y: np.ndarray):
    X = np.asarray(X, dtype=np.float64)
    y = np.asarray(y, dtype=np.int64)
    if X.ndim != 2 or y.shape != (X.shape[0],):
        raise ValueError("X must be (n, d) and y must be (n,)")
    if not np.all(np.isfinite(X)):
        raise ValueError("training features must be finite")
    classes = np.unique(y)
    if not np.isin(classes, (0, 1)).all():
        raise UnsupportedTargetError("only binary {0,1} targets are supported")
    if len(classes) < 2:
        raise UnsupportedTargetError("training data contains a single class")
    return X, y


def _check_query(rows: np.ndarray, n_features: int) -> np.ndarray:
    rows = np.asarray(rows, dtype=np.float64)
    if rows.ndim != 2 or rows.shape[1] != n_features:
        raise ValueError(
            f"query rows must have {n_features} columns, got shape {rows.shape}"
        )
    return rows


@dataclass
class GaussianNB:
    """Per-class feature means/variances with log-posterior prediction."""

    kind = "gnb"
    var_smoothing: float = 1e-9
    priors_: np.ndarray | None = None
    means_: np.ndarray | None = None
    vars_: np.ndarray | None = None

    def fit(self, X, y, seed: int = 0):
        X, y = _check_training_data(X, y)
        eps = max(self.var_smoothing * float(X.var(axis=0).max()), 1e-12)
        self.priors_ = np.array([(y == c).mean() for c in (0, 1)])
        self.means_ = np.vstack([X[y == c].mean(axis=0) for c in (0, 1)])
        self.vars_ = np.vstack([X[y == c].var(axis=0) for c in (0, 1)]) + eps
        return self

    def log_posterior(self, rows) -> np.ndarray:
        rows = _check_query(rows, self.means_.shape[1])
        out = np.empty((rows.shape[0], 2))
        for c in (0, 1):
            ll = -0.5 * (
                np.log(2.0 * np.pi * self.vars_[c])
                + (rows - self.means_[c]) ** 2 / self.vars_[c]
            ).sum(axis=1)
            out[:, c] = np.log(self.priors_[c]) + ll
        return out

    def predict(self, rows) -> np.ndarray:
        return self.log_posterior(rows).argmax(axis=1).astype(np.int64)

    def to_params(self) -> dict:
        return {
            "priors": self.priors_.tolist(),
            "means": self.means_.tolist(),
            "vars": self.vars_.tolist(),
        }

    @classmethod
    def from_params(cls, params: dict) -> "GaussianNB":
        model = cls()
        model.priors_ = np.asarray(params["priors"], dtype=np.float64)
        model.means_ = np.asarray(params["means"], dtype=np.float64)
        model.vars_ = np.asarray(params["vars"], dtype=np.float64)
        return model


def _sigmoid(z: np.ndarray) -> np.ndarray:
    out = np.empty_like(z)
    pos = z >= 0
    out[pos] = 1.0 / (1.0 + np.exp(-z[pos]))
    ez = np.exp(z[~pos])
    out[~pos] = ez / (1.0 + ez)
    return out


@dataclass
class LogisticRegression:
    """Full-batch gradient descent on the mean log-loss."""

    kind = "logreg"
    learning_rate: float = 0.1
    max_iter: int = 2000
    tol: float = 1e-6
    weights_: np.ndarray | None = None
    bias_: float = 0.0
    loss_curve_: list[float] | None = None

    def fit(self, X, y, seed: int = 0):
        X, y = _check_training_data(X, y)
        mu = X.mean(axis=0)
        sd = X.std(axis=0)
        sd[sd == 0] = 1.0
        Xs = (X - mu) / sd
        n = len(y)
        w = np.zeros(X.shape[1])
        b = 0.0
        losses: list[float] = []
        for _ in range(self.max_iter):
            p = _sigmoid(Xs @ w + b)
            pc = np.clip(p, 1e-12, 1.0 - 1e-12)
            loss = float(-(y * np.log(pc) + (1 - y) * np.log(1 - pc)).mean())
            if losses and abs(losses[-1] - loss) < self.tol:
                losses.append(loss)
                break
            losses.append(loss)
            grad_w = Xs.T @ (p - y) / n
            grad_b = float((p - y).mean())
            w -= self.learning_rate * grad_w
            b -= self.learning_rate * grad_b
        # fold the standardization into raw-space parameters
        self.weights_ = w / sd
        self.bias_ = b - float((w * mu / sd).sum())
        self.loss_curve_ = losses
        return self

    def decision_function(self, rows) -> np.ndarray:
        rows = _check_query(rows, self.weights_.shape[0])
        return rows @ self.weights_ + self.bias_

    def predict_proba(self, rows) -> np.ndarray:
        return _sigmoid(self.decision_function(rows))

    def predict(self, rows) -> np.ndarray:
        return (self.predict_proba(rows) > 0.5).astype(np.int64)

    def to_params(self) -> dict:
        return {"weights": self.weights_.tolist(), "bias": self.bias_}

    @classmethod
    def from_params(cls, params: dict) -> "LogisticRegression":
        model = cls()
        model.weights_ = np.asarray(params["weights"], dtype=np.float64)
        model.bias_ = float(params["bias"])
        return model


def _gini_from_counts(counts: np.ndarray, n: float) -> float:
    return 1.0 - float(((counts / n) ** 2).sum())


def _best_split(X: np.ndarray, y: np.ndarray):
    """Best (feature, threshold, gain) under Gini; None when nothing helps.

    Candidate thresholds are midpoints between consecutive distinct sorted
    values. Ties keep the lowest feature index, then the lowest threshold.
    """
    n = len(y)
    parent_counts = np.bincount(y, minlength=2).astype(np.float64)
    parent_gini = _gini_from_counts(parent_counts, n)
    best = None  # (gain, feature, threshold)
    for f in range(X.shape[1]):
        col = X[:, f]
        order = np.argsort(col, kind="stable")
        sv, sy = col[order], y[order]
        change = np.flatnonzero(sv[:-1] != sv[1:])
        if len(change) == 0:
            continue
        ones = np.cumsum(sy)
        n_left = (change + 1).astype(np.float64)
        n_right = n - n_left
        left_ones = ones[change].astype(np.float64)
        right_ones = ones[-1] - left_ones
        gini_left = 1.0 - ((left_ones / n_left) ** 2
                           + ((n_left - left_ones) / n_left) ** 2)
        gini_right = 1.0 - ((right_ones / n_right) ** 2
                            + ((n_right - right_ones) / n_right) ** 2)
        child = (n_left * gini_left + n_right * gini_right) / n
        gains = parent_gini - child
        pos = int(np.argmax(gains))  # first max -> lowest threshold
        gain = float(gains[pos])
        if gain <= 1e-12:
            continue
        threshold = float((sv[change[pos]] + sv[change[pos] + 1]) / 2.0)
        if best is None or gain > best[0] + 1e-15:
            best = (gain, f, threshold)
    return best


@dataclass
class DecisionTree:
    """CART-style binary classification tree on Gini impurity.

    Nodes live in a flat preorder list: internal nodes as
    ``[feature, threshold, left, right, -1]`` and leaves as
    ``[-1, 0.0, -1, -1, class]``.
    """

    kind = "tree"
    max_depth: int = 12
    min_split: int = 2
    min_leaf: int = 1
    nodes_: list | None = None
    n_features_: int = 0

    def fit(self, X, y, seed: int = 0):
        X, y = _check_training_data(X, y)
        self.n_features_ = X.shape[1]
        self.nodes_ = []
        self._grow(X, y, depth=0)
        return self

    def _leaf(self, y: np.ndarray) -> int:
        counts = np.bincount(y, minlength=2)
        node = len(self.nodes_)
        self.nodes_.append([-1, 0.0, -1, -1, int(counts.argmax())])
        return node

    def _grow(self, X: np.ndarray, y: np.ndarray, depth: int) -> int:
        if (
            depth >= self.max_depth
            or len(y) < self.min_split
            or len(np.unique(y)) == 1
        ):
            return self._leaf(y)
        split = _best_split(X, y)
        if split is None:
            return self._leaf(y)
        _, feature, threshold = split
        mask = X[:, feature] <= threshold
        if mask.sum() < self.min_leaf or (~mask).sum() < self.min_leaf:
            return self._leaf(y)
        node = len(self.nodes_)
        self.nodes_.append([feature, threshold, -1, -1, -1])
        self.nodes_[node][2] = self._grow(X[mask], y[mask], depth + 1)
        self.nodes_[node][3] = self._grow(X[~mask], y[~mask], depth + 1)
        return node

    def predict(self, rows) -> np.ndarray:
        rows = _check_query(rows, self.n_features_)
        out = np.empty(rows.shape[0], dtype=np.int64)
        for r in range(rows.shape[0]):
            node = 0
            while self.nodes_[node][0] >= 0:
                feature, threshold, left, right, _ = self.nodes_[node]
                node = left if rows[r, feature] <= threshold else right
            out[r] = self.nodes_[node][4]
        return out

    def to_params(self) -> dict:
        return {"nodes": self.nodes_, "n_features": self.n_features_}

    @classmethod
    def from_params(cls, params: dict) -> "DecisionTree":
        model = cls()
        model.nodes_ = [list(node) for node in params["nodes"]]
        model.n_features_ = int(params["n_features"])
        return model


_MODELS = {"gnb": GaussianNB, "logreg": LogisticRegression, "tree": DecisionTree}


def fit(kind: str, train: LabeledDataset, seed: int = 0, **hyper):
    """Train a classifier of the given kind on a labeled dataset."""
    cls = _MODELS.get(kind)
    if cls is None:
        raise ValueError(f"unknown classifier {kind!r}; expected {MODEL_KINDS}")
    return cls(**hyper).fit(train.features, train.labels, seed=seed)


def predict(model, rows: np.ndarray) -> np.ndarray:
    return model.predict(rows)


def model_to_json(model) -> str:
    return json.dumps(
        {"kind": model.kind, "params": model.to_params()}, sort_keys=True
    )


def model_from_json(text: str):
    obj = json.loads(text)
    cls = _MODELS.get(obj.get("kind"))
    if cls is None:
        raise ValueError(f"unknown classifier kind in JSON: {obj.get('kind')!r}")
    return cls.from_params(obj["params"])
