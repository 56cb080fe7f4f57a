"""Domain-knowledge sample weights for minority-class oversampling.

A weight schema maps each domain category (injury severity tier, accident
frequency level, accident-type fatality risk) to one of two weight levels,
alpha or beta, with alpha + beta = 1, or to zero for no-impact categories.
Raw weights are normalized into a sampling probability vector over the
minority set.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, replace
from enum import Enum
from pathlib import Path

import numpy as np

from .dataset import ClassPartition, LabeledDataset
from .errors import DegenerateWeightsError, SchemaError, UnknownCategoryError

__all__ = [
    "WeightSlot",
    "WeightSchema",
    "SampleWeights",
    "assign_weights",
    "normalize",
    "alpha_grid",
    "schema_from_json",
    "schema_to_json",
    "preset_schema",
    "PRESET_NAMES",
]


class WeightSlot(str, Enum):
    ALPHA = "alpha"
    BETA = "beta"
    ZERO = "zero"


@dataclass(frozen=True)
class WeightSchema:
    """An (alpha, beta) weight pair plus the category-to-slot mapping.

    Category matching is exact-string and case-sensitive.
    """

    alpha: float
    beta: float
    category_map: dict[str, WeightSlot]

    def __post_init__(self):
        if not (0.0 <= self.alpha <= 1.0 and 0.0 <= self.beta <= 1.0):
            raise SchemaError("alpha and beta must lie in [0, 1]")
        if abs(self.alpha + self.beta - 1.0) > 1e-9:
            raise SchemaError(
                f"alpha + beta must equal 1, got {self.alpha} + {self.beta}"
            )
        if not self.category_map:
            raise SchemaError("schema must map at least one category")

    def weight_of(self, category: str) -> float:
        slot = self.category_map.get(category)
        if slot is None:
            raise UnknownCategoryError(
                f"category {category!r} is not mapped by the weight schema"
            )
        if slot is WeightSlot.ALPHA:
            return self.alpha
        if slot is WeightSlot.BETA:
            return self.beta
        return 0.0

    def with_alpha(self, alpha: float) -> "WeightSchema":
        """Same category mapping with a new (alpha, 1 - alpha) pair."""
        return replace(self, alpha=alpha, beta=1.0 - alpha)


@dataclass(frozen=True)
class SampleWeights:
    """Raw per-sample weights and their normalized probability vector.

    Entry i corresponds to minority-set index i.
    """

    raw: np.ndarray
    normalized: np.ndarray

    @classmethod
    def from_raw(cls, raw: np.ndarray) -> "SampleWeights":
        raw = np.asarray(raw, dtype=np.float64)
        return cls(raw=raw, normalized=normalize(raw))

    @classmethod
    def uniform(cls, n: int) -> "SampleWeights":
        if n < 1:
            raise ValueError("need at least one sample")
        return cls.from_raw(np.ones(n))

    def __len__(self) -> int:
        return len(self.raw)


def normalize(raw: np.ndarray) -> np.ndarray:
    """Scale a non-negative vector so it sums to one."""
    raw = np.asarray(raw, dtype=np.float64)
    if raw.ndim != 1 or len(raw) == 0:
        raise ValueError("expected a non-empty 1-D weight vector")
    if np.any(raw < 0):
        raise ValueError("weights must be non-negative")
    total = raw.sum()
    if total == 0:
        raise DegenerateWeightsError("all weights are zero; cannot normalize")
    return raw / total


def assign_weights(
    ds: LabeledDataset, part: ClassPartition, schema: WeightSchema
) -> SampleWeights:
    """Look up the schema weight for each minority sample, then normalize.

    Majority samples receive no weight; they are never oversampled. Raises
    if any minority category is unmapped or if every weight comes out zero.
    """
    if ds.categories is None:
        raise SchemaError(
            "dataset has no category column; weighted methods require one"
        )
    raw = np.array(
        [schema.weight_of(ds.categories[i]) for i in part.minority],
        dtype=np.float64,
    )
    return SampleWeights.from_raw(raw)


def alpha_grid() -> list[tuple[float, float]]:
    """The 20 (alpha, beta) pairs swept during evaluation.

    alpha_k = k/21 for k = 1..20, rounded to 3 decimals; beta = 1 - alpha.
    The endpoints 0 and 1 are excluded because either would zero out one
    minority subgroup entirely.
    """
    grid = []
    for k in range(1, 21):
        a = round(k / 21, 3)
        grid.append((a, round(1 - k / 21, 3)))
    return grid


_SLOT_TOKENS = {slot.value: slot for slot in WeightSlot}


def schema_from_json(text: str) -> WeightSchema:
    """Parse ``{"alpha": .., "beta": .., "categories": {cat: slot}}``."""
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"invalid schema JSON: {exc}") from None
    if not isinstance(obj, dict):
        raise SchemaError("schema JSON must be an object")
    for key in ("alpha", "beta", "categories"):
        if key not in obj:
            raise SchemaError(f"schema JSON missing key {key!r}")
    categories = obj["categories"]
    if not isinstance(categories, dict):
        raise SchemaError("schema 'categories' must map category -> slot")
    category_map = {}
    for cat, token in categories.items():
        slot = _SLOT_TOKENS.get(str(token).lower())
        if slot is None:
            raise SchemaError(
                f"category {cat!r} maps to unknown slot {token!r}; "
                f"expected one of {sorted(_SLOT_TOKENS)}"
            )
        category_map[cat] = slot
    return WeightSchema(
        alpha=float(obj["alpha"]), beta=float(obj["beta"]), category_map=category_map
    )


def schema_to_json(schema: WeightSchema) -> str:
    obj = {
        "alpha": schema.alpha,
        "beta": schema.beta,
        "categories": {c: s.value for c, s in schema.category_map.items()},
    }
    return json.dumps(obj, indent=2, sort_keys=True)


def load_schema(path: str | Path) -> WeightSchema:
    return schema_from_json(Path(path).read_text(encoding="utf-8"))


# Categories whose accidents carry high fatality risk in nationwide
# construction records; everything else observed in that data is low-risk.
_HIGH_FATALITY_TYPES = (
    "Struck by Moving Objects",
    "Caught in/between Objects",
    "Collapse/Failure of Structures",
    "Fires & Explosion",
    "Falls from Heights",
    "Struck by Falling Objects",
    "Striking against Objects",
)

_LOW_FATALITY_TYPES = (
    "Over-exertion/Strenuous Movements",
    "Exposure to Hazardous Substances",
    "Others",
    "Exposure to Extreme Temperatures",
    "Exposure to Biological Materials",
    "Stepping on Objects",
    "Others-Traffic Accident",
    "Slips, Trips & Falls",
    "Cut/Stabbed by Objects",
    "Physical Assault",
    "Exposure to Electric current",
)


def _smd_map() -> dict[str, WeightSlot]:
    # severity tiers: L1 fatal, L2 major, L3 minor
    return {
        "L1": WeightSlot.ALPHA,
        "L2": WeightSlot.ALPHA,
        "L3": WeightSlot.BETA,
    }


def _scd_map() -> dict[str, WeightSlot]:
    # accident-count codes: 2 = more than one, 1 = one, 0 = none
    return {
        "2": WeightSlot.ALPHA,
        "1": WeightSlot.BETA,
        "0": WeightSlot.ZERO,
    }


def _nsd_map() -> dict[str, WeightSlot]:
    mapping = {t: WeightSlot.ALPHA for t in _HIGH_FATALITY_TYPES}
    mapping.update({t: WeightSlot.BETA for t in _LOW_FATALITY_TYPES})
    return mapping


def _synthetic_map() -> dict[str, WeightSlot]:
    # tags emitted by harness.generate_synthetic
    return {
        "high": WeightSlot.ALPHA,
        "low": WeightSlot.BETA,
        "none": WeightSlot.ZERO,
    }


_PRESETS = {
    "smd": _smd_map,
    "scd": _scd_map,
    "nsd": _nsd_map,
    "synthetic": _synthetic_map,
}

PRESET_NAMES = tuple(sorted(_PRESETS))


def preset_schema(name: str, alpha: float = 0.75) -> WeightSchema:
    """One of the shipped category maps with the given alpha.

    ``smd``: injury-severity tiers L1/L2/L3. ``scd``: accident-count codes
    2/1/0. ``nsd``: accident types grouped by fatality risk. ``synthetic``:
    the high/low subgroup tags of generated datasets.
    """
    builder = _PRESETS.get(name)
    if builder is None:
        raise SchemaError(
            f"unknown preset {name!r}; expected one of {list(PRESET_NAMES)}"
        )
    return WeightSchema(alpha=alpha, beta=1.0 - alpha, category_map=builder())
