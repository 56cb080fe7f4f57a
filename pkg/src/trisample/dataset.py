"""Loading, validation, splitting, and class partitioning of tabular datasets.

CSV contract: UTF-8, comma-delimited, mandatory header row, no index column.
The label column may hold any two distinct tokens; the rarer one becomes the
positive class 1. A category column, when named, is kept as strings and
excluded from the feature matrix. Every other column must parse as a finite
real number; a cell that does not is rejected with its row and column.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass, field, replace
from pathlib import Path

import numpy as np

from .errors import ParseError, SchemaError, UnsupportedTargetError

__all__ = [
    "LabeledDataset",
    "ClassPartition",
    "load_csv",
    "save_csv",
    "train_test_split",
    "partition_by_class",
    "imbalance_ratio",
]


@dataclass(frozen=True)
class LabeledDataset:
    """An immutable numeric feature matrix with binary labels.

    ``labels`` hold {0, 1} with 1 the positive (usually minority) class.
    ``categories`` optionally carries one domain-category string per sample,
    e.g. an injury-severity tier or an accident type. ``label_values`` maps
    {0, 1} back to the raw tokens seen in the source file. ``synthetic``
    flags rows appended by an oversampler (1) vs original rows (0).
    """

    features: np.ndarray
    labels: np.ndarray
    feature_names: tuple[str, ...]
    categories: tuple[str, ...] | None = None
    label_values: dict[int, str] | None = None
    synthetic: np.ndarray | None = None

    def __post_init__(self):
        features = np.asarray(self.features, dtype=np.float64)
        labels = np.asarray(self.labels, dtype=np.int64)
        object.__setattr__(self, "features", features)
        object.__setattr__(self, "labels", labels)
        if features.ndim != 2:
            raise ValueError("features must be a 2-D matrix")
        if labels.shape != (features.shape[0],):
            raise ValueError("labels length must equal feature row count")
        if len(self.feature_names) != features.shape[1]:
            raise ValueError("feature_names length must equal feature column count")
        if not np.all(np.isfinite(features)):
            raise ValueError("features must be finite (no NaN/Inf)")
        if not np.isin(labels, (0, 1)).all():
            raise ValueError("labels must be 0 or 1")
        if self.categories is not None:
            object.__setattr__(self, "categories", tuple(self.categories))
            if len(self.categories) != features.shape[0]:
                raise ValueError("categories length must equal feature row count")
        if self.synthetic is not None:
            synthetic = np.asarray(self.synthetic, dtype=np.int64)
            object.__setattr__(self, "synthetic", synthetic)
            if synthetic.shape != (features.shape[0],):
                raise ValueError("synthetic length must equal feature row count")

    @property
    def n_samples(self) -> int:
        return self.features.shape[0]

    @property
    def n_features(self) -> int:
        return self.features.shape[1]

    def subset(self, indices: np.ndarray) -> "LabeledDataset":
        """A new dataset holding the given rows, in the given order."""
        indices = np.asarray(indices, dtype=np.int64)
        return replace(
            self,
            features=self.features[indices],
            labels=self.labels[indices],
            categories=None if self.categories is None
            else tuple(self.categories[i] for i in indices),
            synthetic=None if self.synthetic is None else self.synthetic[indices],
        )


@dataclass(frozen=True)
class ClassPartition:
    """Row indices of the rarer (minority) and commoner (majority) class.

    ``minority_label`` records which of {0, 1} turned out rarer, since
    programmatic datasets may carry the minority under label 0.
    """

    minority: np.ndarray
    majority: np.ndarray
    minority_label: int = 1

    def __post_init__(self):
        object.__setattr__(self, "minority", np.asarray(self.minority, dtype=np.int64))
        object.__setattr__(self, "majority", np.asarray(self.majority, dtype=np.int64))


def _parse_cell(token: str, row: int, column: str) -> float:
    token = token.strip()
    if token == "":
        raise ParseError(f"missing value at data row {row}, column {column!r}")
    try:
        value = float(token)
    except ValueError:
        raise ParseError(
            f"non-numeric value {token!r} at data row {row}, column {column!r}"
        ) from None
    if not np.isfinite(value):
        raise ParseError(
            f"non-finite value {token!r} at data row {row}, column {column!r}"
        )
    return value


def load_csv(
    path: str | Path,
    label_col: str,
    category_col: str | None = None,
    positive_label: str | None = None,
) -> LabeledDataset:
    """Load a CSV file into a :class:`LabeledDataset`.

    The rarer label token maps to 1 unless ``positive_label`` pins the
    mapping explicitly. On an exact tie the lexicographically larger token
    becomes 1, so the mapping never depends on row order.
    """
    path = Path(path)
    with path.open(newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise SchemaError(f"{path}: file is empty (header row required)") from None
        rows = list(reader)

    if len(set(header)) != len(header):
        raise SchemaError(f"{path}: duplicate column names in header")
    if label_col not in header:
        raise SchemaError(f"{path}: label column {label_col!r} not found")
    if category_col is not None and category_col not in header:
        raise SchemaError(f"{path}: category column {category_col!r} not found")
    if not rows:
        raise SchemaError(f"{path}: no data rows")

    label_idx = header.index(label_col)
    cat_idx = header.index(category_col) if category_col is not None else None
    feature_cols = [
        (i, name)
        for i, name in enumerate(header)
        if i != label_idx and i != cat_idx
    ]

    raw_labels: list[str] = []
    categories: list[str] = []
    features = np.empty((len(rows), len(feature_cols)), dtype=np.float64)
    for r, row in enumerate(rows, start=1):
        if len(row) != len(header):
            raise ParseError(
                f"{path}: data row {r} has {len(row)} fields, expected {len(header)}"
            )
        raw_labels.append(row[label_idx].strip())
        if cat_idx is not None:
            categories.append(row[cat_idx])
        for c, (i, name) in enumerate(feature_cols):
            features[r - 1, c] = _parse_cell(row[i], r, name)

    distinct = sorted(set(raw_labels))
    if len(distinct) != 2:
        raise UnsupportedTargetError(
            f"{path}: label column {label_col!r} has {len(distinct)} distinct "
            f"values {distinct}; exactly two are supported"
        )
    if positive_label is not None:
        if positive_label not in distinct:
            raise UnsupportedTargetError(
                f"{path}: positive label {positive_label!r} not among {distinct}"
            )
        positive = positive_label
    else:
        counts = {tok: raw_labels.count(tok) for tok in distinct}
        # rarer token -> 1; ties resolved toward the larger token
        positive = min(distinct, key=lambda tok: (counts[tok], -distinct.index(tok)))
    negative = distinct[0] if distinct[1] == positive else distinct[1]
    labels = np.fromiter((1 if tok == positive else 0 for tok in raw_labels),
                         dtype=np.int64, count=len(raw_labels))

    return LabeledDataset(
        features=features,
        labels=labels,
        feature_names=tuple(name for _, name in feature_cols),
        categories=tuple(categories) if cat_idx is not None else None,
        label_values={0: negative, 1: positive},
    )


def save_csv(
    ds: LabeledDataset,
    path: str | Path,
    label_col: str = "label",
    category_col: str = "category",
) -> None:
    """Write a dataset back to CSV.

    Labels are written with their original raw tokens when known. Floats use
    the shortest round-tripping representation, so load_csv(save_csv(ds))
    reproduces the features exactly. A ``synthetic`` column is appended when
    the dataset carries oversampling provenance.
    """
    tokens = ds.label_values or {0: "0", 1: "1"}
    header = list(ds.feature_names) + [label_col]
    if ds.categories is not None:
        header.append(category_col)
    if ds.synthetic is not None:
        header.append("synthetic")
    with Path(path).open("w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(header)
        for i in range(ds.n_samples):
            row = [repr(float(v)) for v in ds.features[i]]
            row.append(tokens[int(ds.labels[i])])
            if ds.categories is not None:
                row.append(ds.categories[i])
            if ds.synthetic is not None:
                row.append(str(int(ds.synthetic[i])))
            writer.writerow(row)


def train_test_split(
    ds: LabeledDataset, train_fraction: float, seed: int
) -> tuple[LabeledDataset, LabeledDataset]:
    """Split rows into train/test by a seeded random permutation.

    The first ``floor(train_fraction * n)`` permuted rows form the training
    set. The split is a pure function of (dataset, fraction, seed).
    """
    if ds.n_samples == 0:
        raise ValueError("cannot split an empty dataset")
    if not 0.0 < train_fraction < 1.0:
        raise ValueError("train_fraction must lie in (0, 1)")
    n_train = int(np.floor(train_fraction * ds.n_samples))
    if n_train < 1 or ds.n_samples - n_train < 1:
        raise ValueError(
            f"train_fraction={train_fraction} leaves an empty side "
            f"for n={ds.n_samples}"
        )
    perm = np.random.default_rng(seed).permutation(ds.n_samples)
    return ds.subset(perm[:n_train]), ds.subset(perm[n_train:])


def partition_by_class(ds: LabeledDataset) -> ClassPartition:
    """Split row indices into minority and majority, preserving index order.

    The rarer label is the minority; on a tie, label 1 stays minority.
    """
    idx1 = np.flatnonzero(ds.labels == 1)
    idx0 = np.flatnonzero(ds.labels == 0)
    if len(idx0) == 0 or len(idx1) == 0:
        raise UnsupportedTargetError(
            "both classes must be present to partition by class"
        )
    if len(idx0) < len(idx1):
        return ClassPartition(minority=idx0, majority=idx1, minority_label=0)
    return ClassPartition(minority=idx1, majority=idx0, minority_label=1)


def imbalance_ratio(part: ClassPartition) -> float:
    """|minority| / |majority|; 1.0 for perfectly balanced classes."""
    return len(part.minority) / len(part.majority)
