"""Deterministic brute-force exact k-nearest-neighbor search.

Euclidean distance on raw feature values; exact ties are broken toward the
lower pool index, so repeated calls and row permutations behave predictably.
Pools here are small (a few thousand rows at most), so the O(n*m) scan is
preferred over index structures. Feature standardization, when wanted, is
the caller's preprocessing step.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = ["NeighborList", "k_nearest"]

# cap the materialized (chunk, pool, dim) difference block at ~64 MB
_BLOCK_ELEMENTS = 8_000_000


@dataclass(frozen=True)
class NeighborList:
    """Per-query neighbor pool indices and distances, ascending by distance."""

    indices: np.ndarray  # (n_queries, k) int
    distances: np.ndarray  # (n_queries, k) float

    @property
    def k(self) -> int:
        return self.indices.shape[1]


def k_nearest(
    query_rows: np.ndarray,
    pool_rows: np.ndarray,
    k: int,
    self_indices: np.ndarray | None = None,
) -> NeighborList:
    """Exact k nearest pool rows for each query row.

    ``self_indices[i]``, when given, names the pool row that is query ``i``
    itself; it is excluded from that query's neighbors.
    """
    query = np.asarray(query_rows, dtype=np.float64)
    pool = np.asarray(pool_rows, dtype=np.float64)
    if query.ndim != 2 or pool.ndim != 2:
        raise ValueError("query and pool must be 2-D matrices")
    if query.shape[1] != pool.shape[1]:
        raise ValueError(
            f"dimension mismatch: query has {query.shape[1]} columns, "
            f"pool has {pool.shape[1]}"
        )
    n_query, n_pool = query.shape[0], pool.shape[0]
    max_k = n_pool - 1 if self_indices is not None else n_pool
    if not 1 <= k <= max_k:
        raise ValueError(f"k={k} must lie in [1, {max_k}] for this pool")
    if self_indices is not None:
        self_indices = np.asarray(self_indices, dtype=np.int64)
        if self_indices.shape != (n_query,):
            raise ValueError("self_indices must hold one pool index per query")

    indices = np.empty((n_query, k), dtype=np.int64)
    distances = np.empty((n_query, k), dtype=np.float64)
    pool_ids = np.arange(n_pool)
    chunk_rows = max(1, _BLOCK_ELEMENTS // max(1, n_pool * pool.shape[1]))
    for start in range(0, n_query, chunk_rows):
        stop = min(start + chunk_rows, n_query)
        chunk = query[start:stop]
        diff = chunk[:, None, :] - pool[None, :, :]
        d2 = np.einsum("ijk,ijk->ij", diff, diff)
        if self_indices is not None:
            rows = np.arange(stop - start)
            d2[rows, self_indices[start:stop]] = np.inf
        # lexsort: primary key squared distance, secondary key pool index
        order = np.lexsort(
            (np.broadcast_to(pool_ids, d2.shape), d2), axis=1
        )[:, :k]
        indices[start:stop] = order
        distances[start:stop] = np.sqrt(np.take_along_axis(d2, order, axis=1))
    return NeighborList(indices=indices, distances=distances)
