"""Minority-class oversamplers: plain and triangle-weighted variants.

Six methods share one family tree. The ROS pair duplicates minority rows,
drawing seeds from a categorical distribution (uniform for plain ROS, the
normalized domain weights for the weighted variant). The SMOTE pair
interpolates between a seed row and one of its k nearest minority
neighbors; the seed index cycles as ``remaining % |D|`` while the requested
count decrements. The ADASYN pair first allocates a per-seed budget from
the fraction of minority members among each seed's k nearest neighbors in
the full dataset, then interpolates like SMOTE.

The interpolation factor t is Uniform(0,1) for the plain variants. The
weighted variants draw t from Normal(w_i / (w_i + w_j), sigma^2), clipped
to [0,1] so synthetics stay on the seed-neighbor segment; the mean pulls
synthetics toward the heavier endpoint.

Every sampler is a pure function of its inputs and seed. Each synthetic row
records its provenance (seed index, neighbor index, factor, fallback flag),
and rows are constructed exactly as ``D[i] + t * (D[j] - D[i])`` so they can
be reconstructed bit-for-bit from provenance.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from enum import Enum
from typing import Callable, Iterator, NamedTuple

import numpy as np

from .dataset import ClassPartition, LabeledDataset
from .errors import (
    DegeneratePairError,
    NothingToGenerateError,
    SchemaError,
)
from .knn import k_nearest
from .weights import SampleWeights, WeightSchema, assign_weights

__all__ = [
    "Method",
    "OversamplerConfig",
    "SyntheticSet",
    "ProvenanceRecord",
    "ros",
    "eat_ros",
    "smote",
    "eat_smote",
    "adasyn",
    "eat_adasyn",
    "balance",
]


class Method(str, Enum):
    """Resampling method tokens as used on the command line."""

    NONE = "none"
    ROS = "ros"
    SMOTE = "smote"
    ADASYN = "adasyn"
    EAT_ROS = "eat-ros"
    EAT_SMOTE = "eat-smote"
    EAT_ADASYN = "eat-adasyn"

    @property
    def weighted(self) -> bool:
        return self.value.startswith("eat-")

    @property
    def baseline(self) -> "Method":
        """The unweighted method this one extends (identity for baselines)."""
        return Method(self.value.removeprefix("eat-"))


@dataclass(frozen=True)
class OversamplerConfig:
    """Knobs shared by all samplers.

    ``n_to_generate`` of None means "whatever closes the class gap".
    ``adasyn_invert_density`` switches the ADASYN allocation to the fraction
    of majority neighbors (the classic convention) instead of the minority
    fraction used here by default.
    """

    method: Method
    k: int = 5
    sigma: float = 0.1
    n_to_generate: int | None = None
    seed: int = 0
    adasyn_invert_density: bool = False

    def __post_init__(self):
        object.__setattr__(self, "method", Method(self.method))
        if self.k < 1:
            raise ValueError("k must be >= 1")
        if self.sigma < 0:
            raise ValueError("sigma must be >= 0")
        if self.n_to_generate is not None and self.n_to_generate < 1:
            raise ValueError("n_to_generate must be >= 1 when given")


class ProvenanceRecord(NamedTuple):
    seed_index: int
    neighbor_index: int | None
    factor: float | None
    fallback: bool


@dataclass(frozen=True)
class SyntheticSet:
    """Generated minority rows plus per-row provenance.

    ``neighbor_indices`` is -1 and ``factors`` NaN for rows that are plain
    copies (ROS output and fallback self-copies). Indices refer to positions
    within the minority matrix the sampler was given.
    """

    rows: np.ndarray
    seed_indices: np.ndarray
    neighbor_indices: np.ndarray
    factors: np.ndarray
    fallback: np.ndarray
    method: Method

    def __len__(self) -> int:
        return self.rows.shape[0]

    @property
    def n_fallback(self) -> int:
        return int(self.fallback.sum())

    def records(self) -> Iterator[ProvenanceRecord]:
        for i in range(len(self)):
            j = int(self.neighbor_indices[i])
            t = float(self.factors[i])
            yield ProvenanceRecord(
                seed_index=int(self.seed_indices[i]),
                neighbor_index=None if j < 0 else j,
                factor=None if np.isnan(t) else t,
                fallback=bool(self.fallback[i]),
            )


def _as_matrix(rows: np.ndarray, name: str) -> np.ndarray:
    rows = np.asarray(rows, dtype=np.float64)
    if rows.ndim != 2:
        raise ValueError(f"{name} must be a 2-D matrix")
    return rows


def eat_ros(D: np.ndarray, weights: SampleWeights, n: int, seed: int) -> SyntheticSet:
    """Copy n minority rows drawn i.i.d. from the weight distribution."""
    D = _as_matrix(D, "D")
    if len(weights) != len(D):
        raise ValueError("weights must align with minority rows")
    rng = np.random.default_rng(seed)
    picks = rng.choice(len(D), size=n, replace=True, p=weights.normalized)
    return SyntheticSet(
        rows=D[picks],
        seed_indices=picks.astype(np.int64),
        neighbor_indices=np.full(n, -1, dtype=np.int64),
        factors=np.full(n, np.nan),
        fallback=np.zeros(n, dtype=bool),
        method=Method.EAT_ROS,
    )


def ros(D: np.ndarray, n: int, seed: int) -> SyntheticSet:
    """Uniform random duplication; shares the categorical draw with eat_ros."""
    D = _as_matrix(D, "D")
    out = eat_ros(D, SampleWeights.uniform(len(D)), n, seed)
    return replace(out, method=Method.ROS)


def _gaussian_factor(weights: SampleWeights, sigma: float):
    w = weights.normalized

    def draw(i: int, j: int, rng: np.random.Generator) -> float:
        pair_sum = w[i] + w[j]
        if pair_sum == 0:
            raise DegeneratePairError(
                f"seed {i} and neighbor {j} both carry zero weight"
            )
        t = rng.normal(w[i] / pair_sum, sigma)
        return min(max(t, 0.0), 1.0)

    return draw


def _uniform_factor(i: int, j: int, rng: np.random.Generator) -> float:
    return rng.random()


def _single_row_copies(D: np.ndarray, n: int, method: Method) -> SyntheticSet:
    return SyntheticSet(
        rows=np.repeat(D, n, axis=0),
        seed_indices=np.zeros(n, dtype=np.int64),
        neighbor_indices=np.full(n, -1, dtype=np.int64),
        factors=np.full(n, np.nan),
        fallback=np.ones(n, dtype=bool),
        method=method,
    )


def _smote_loop(
    D: np.ndarray,
    k: int,
    n: int,
    seed: int,
    factor_draw: Callable[[int, int, np.random.Generator], float],
    method: Method,
) -> SyntheticSet:
    m = len(D)
    if m == 1:
        # nothing to interpolate with; duplicate and flag
        return _single_row_copies(D, n, method)
    if k > m - 1:
        raise ValueError(f"k={k} exceeds |D|-1={m - 1}")
    neighbors = k_nearest(D, D, k, self_indices=np.arange(m)).indices
    rng = np.random.default_rng(seed)
    rows = np.empty((n, D.shape[1]))
    seeds = np.empty(n, dtype=np.int64)
    picks = np.empty(n, dtype=np.int64)
    factors = np.empty(n)
    remaining = n
    pos = 0
    while remaining != 0:
        i = remaining % m
        j = int(neighbors[i, rng.integers(0, k)])
        t = factor_draw(i, j, rng)
        rows[pos] = D[i] + t * (D[j] - D[i])
        seeds[pos], picks[pos], factors[pos] = i, j, t
        remaining -= 1
        pos += 1
    return SyntheticSet(
        rows=rows,
        seed_indices=seeds,
        neighbor_indices=picks,
        factors=factors,
        fallback=np.zeros(n, dtype=bool),
        method=method,
    )


def eat_smote(
    D: np.ndarray,
    weights: SampleWeights,
    k: int,
    sigma: float,
    n: int,
    seed: int,
) -> SyntheticSet:
    """SMOTE with weight-directed interpolation factors."""
    D = _as_matrix(D, "D")
    if len(weights) != len(D):
        raise ValueError("weights must align with minority rows")
    return _smote_loop(
        D, k, n, seed, _gaussian_factor(weights, sigma), Method.EAT_SMOTE
    )


def smote(D: np.ndarray, k: int, n: int, seed: int) -> SyntheticSet:
    """Classic SMOTE: uniform interpolation between a row and a k-NN."""
    D = _as_matrix(D, "D")
    return _smote_loop(D, k, n, seed, _uniform_factor, Method.SMOTE)


def _adasyn_allocate(d: np.ndarray, n: int) -> np.ndarray:
    """Per-seed budgets: floor(n * d_i / sum(d) + 0.5)."""
    total = d.sum()
    return np.floor(n * d / total + 0.5).astype(np.int64)


def _adasyn_loop(
    D: np.ndarray,
    C: np.ndarray,
    k: int,
    n: int,
    seed: int,
    factor_draw: Callable[[int, int, np.random.Generator], float],
    method: Method,
    invert_density: bool,
) -> SyntheticSet:
    m = len(D)
    pool = np.vstack([C, D])
    if k > len(pool) - 1:
        raise ValueError(f"k={k} exceeds |C u D|-1={len(pool) - 1}")
    n_major = len(C)
    neighbors = k_nearest(
        D, pool, k, self_indices=n_major + np.arange(m)
    ).indices
    minority_hits = neighbors >= n_major
    density = minority_hits.sum(axis=1) / k
    if invert_density:
        density = 1.0 - density

    uniform_fallback = density.sum() == 0
    if uniform_fallback:
        budgets = np.full(m, int(np.floor(n / m + 0.5)), dtype=np.int64)
    else:
        budgets = _adasyn_allocate(density, n)

    rng = np.random.default_rng(seed)
    total = int(budgets.sum())
    rows = np.empty((total, D.shape[1]))
    seeds = np.empty(total, dtype=np.int64)
    picks = np.full(total, -1, dtype=np.int64)
    factors = np.full(total, np.nan)
    fallback = np.zeros(total, dtype=bool)
    pos = 0
    for i in range(m):
        candidates = neighbors[i][minority_hits[i]] - n_major
        for _ in range(int(budgets[i])):
            if len(candidates) == 0:
                rows[pos] = D[i]
                fallback[pos] = True
            else:
                j = int(candidates[rng.integers(0, len(candidates))])
                t = factor_draw(i, j, rng)
                rows[pos] = D[i] + t * (D[j] - D[i])
                picks[pos], factors[pos] = j, t
                fallback[pos] = uniform_fallback
            seeds[pos] = i
            pos += 1
    return SyntheticSet(
        rows=rows,
        seed_indices=seeds,
        neighbor_indices=picks,
        factors=factors,
        fallback=fallback,
        method=method,
    )


def eat_adasyn(
    D: np.ndarray,
    C: np.ndarray,
    weights: SampleWeights,
    k: int,
    sigma: float,
    n: int,
    seed: int,
    invert_density: bool = False,
) -> SyntheticSet:
    """ADASYN allocation with weight-directed interpolation factors."""
    D = _as_matrix(D, "D")
    C = _as_matrix(C, "C")
    if len(weights) != len(D):
        raise ValueError("weights must align with minority rows")
    return _adasyn_loop(
        D, C, k, n, seed, _gaussian_factor(weights, sigma),
        Method.EAT_ADASYN, invert_density,
    )


def adasyn(
    D: np.ndarray,
    C: np.ndarray,
    k: int,
    n: int,
    seed: int,
    invert_density: bool = False,
) -> SyntheticSet:
    """Classic ADASYN with the same allocation rule as the weighted variant."""
    D = _as_matrix(D, "D")
    C = _as_matrix(C, "C")
    return _adasyn_loop(
        D, C, k, n, seed, _uniform_factor, Method.ADASYN, invert_density
    )


def balance(
    ds: LabeledDataset,
    part: ClassPartition,
    config: OversamplerConfig,
    schema: WeightSchema | None = None,
    return_synthetic: bool = False,
):
    """Append synthetic minority rows until the classes balance.

    By default generates ``|majority| - |minority|`` rows (exact 1:1 for the
    ROS and SMOTE families; the ADASYN families land within the rounding of
    their per-seed budgets). Appended rows take the minority label, the
    category of their seed sample, and a ``synthetic`` flag of 1.

    With ``return_synthetic=True`` returns ``(dataset, synthetic_set)``.
    """
    method = config.method
    if method is Method.NONE:
        raise ValueError("method 'none' does not generate samples")

    n = config.n_to_generate
    if n is None:
        n = len(part.majority) - len(part.minority)
        if n == 0:
            raise NothingToGenerateError(
                "classes are already balanced; nothing to generate"
            )

    D = ds.features[part.minority]
    C = ds.features[part.majority]
    weights = None
    if method.weighted:
        if schema is None:
            raise SchemaError(f"method {method.value!r} requires a weight schema")
        weights = assign_weights(ds, part, schema)

    if method is Method.ROS:
        synth = ros(D, n, config.seed)
    elif method is Method.EAT_ROS:
        synth = eat_ros(D, weights, n, config.seed)
    elif method is Method.SMOTE:
        synth = smote(D, config.k, n, config.seed)
    elif method is Method.EAT_SMOTE:
        synth = eat_smote(D, weights, config.k, config.sigma, n, config.seed)
    elif method is Method.ADASYN:
        synth = adasyn(D, C, config.k, n, config.seed,
                       config.adasyn_invert_density)
    else:
        synth = eat_adasyn(D, C, weights, config.k, config.sigma, n,
                           config.seed, config.adasyn_invert_density)

    n_new = len(synth)
    categories = None
    if ds.categories is not None:
        seed_rows = part.minority[synth.seed_indices]
        categories = tuple(ds.categories) + tuple(
            ds.categories[i] for i in seed_rows
        )
    existing_flags = (
        ds.synthetic if ds.synthetic is not None
        else np.zeros(ds.n_samples, dtype=np.int64)
    )
    balanced = LabeledDataset(
        features=np.vstack([ds.features, synth.rows]),
        labels=np.concatenate(
            [ds.labels, np.full(n_new, part.minority_label, dtype=np.int64)]
        ),
        feature_names=ds.feature_names,
        categories=categories,
        label_values=ds.label_values,
        synthetic=np.concatenate(
            [existing_flags, np.ones(n_new, dtype=np.int64)]
        ),
    )
    if return_synthetic:
        return balanced, synth
    return balanced
