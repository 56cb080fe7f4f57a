"""Confusion-matrix evaluation: balanced accuracy and its paired increase.

Balanced accuracy is the mean of sensitivity and specificity, so a
classifier that only ever predicts the majority class scores 0.5 no matter
how skewed the test set is. The increase metric is simply the balanced
accuracy with domain weights minus the balanced accuracy without, for the
same method and classifier.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import UndefinedMetricError

__all__ = [
    "ConfusionCounts",
    "confusion_counts",
    "sensitivity",
    "specificity",
    "balanced_accuracy",
    "iba",
]


@dataclass(frozen=True)
class ConfusionCounts:
    tp: int
    fn: int
    tn: int
    fp: int

    def __post_init__(self):
        for name in ("tp", "fn", "tn", "fp"):
            v = getattr(self, name)
            if not isinstance(v, (int, np.integer)) or v < 0:
                raise ValueError(f"{name} must be a non-negative integer")


def confusion_counts(y_true, y_pred, positive: int = 1) -> ConfusionCounts:
    y_true = np.asarray(y_true)
    y_pred = np.asarray(y_pred)
    if y_true.shape != y_pred.shape:
        raise ValueError("y_true and y_pred must have the same length")
    pos = y_true == positive
    hit = y_pred == positive
    return ConfusionCounts(
        tp=int((pos & hit).sum()),
        fn=int((pos & ~hit).sum()),
        tn=int((~pos & ~hit).sum()),
        fp=int((~pos & hit).sum()),
    )


def sensitivity(c: ConfusionCounts) -> float:
    if c.tp + c.fn == 0:
        raise UndefinedMetricError("no positive samples; sensitivity undefined")
    return c.tp / (c.tp + c.fn)


def specificity(c: ConfusionCounts) -> float:
    if c.tn + c.fp == 0:
        raise UndefinedMetricError("no negative samples; specificity undefined")
    return c.tn / (c.tn + c.fp)


def balanced_accuracy(c: ConfusionCounts) -> float:
    """0.5 * (sensitivity + specificity); requires both classes present."""
    return 0.5 * (sensitivity(c) + specificity(c))


def iba(ba_weighted: float, ba_unweighted: float) -> float:
    """Signed balanced-accuracy gain of weighting; positive means it helped."""
    for name, v in (("ba_weighted", ba_weighted), ("ba_unweighted", ba_unweighted)):
        if not 0.0 <= v <= 1.0:
            raise ValueError(f"{name} must lie in [0, 1], got {v}")
    return ba_weighted - ba_unweighted
