"""Casting inner-product and nearest-neighbor search as bounded-pull bandits.

Vector i becomes arm i.  For a query q, the reward of arm i at position j is
one coordinate's contribution to the score:

    inner_product:      f(i, j) = v_i[j] * q[j]
    neg_sq_distance:    f(i, j) = -(q[j] - v_i[j])^2

so the arm's true mean over all N positions is score(i)/N (for inner
products, exactly q . v_i / N), and finding the top-K arms by mean is
finding the top-K vectors by score.  Epsilon is therefore on the
per-coordinate mean scale; multiply by N for the equivalent inner-product
gap.  Rewards are computed lazily per pulled position; no n x N reward
matrix is ever materialized.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .arms import DENSE_SWITCH, LazySource
from .elimination import EliminationConfig, EliminationTrace, median_elimination_topk

__all__ = [
    "ObjectiveKind",
    "VectorSet",
    "Query",
    "DegenerateRangeError",
    "build_arms",
    "reward_range",
    "true_means",
    "mips_topk",
]


class ObjectiveKind(enum.Enum):
    INNER_PRODUCT = "inner_product"
    NEG_SQ_DISTANCE = "neg_sq_distance"


class DegenerateRangeError(ValueError):
    """All rewards provably identical; the bandit gains nothing over no-op."""


@dataclass
class VectorSet:
    """n dense vectors of a common dimension, float64, plus |entry| bound."""

    data: np.ndarray
    coord_bound: float = 0.0

    def __post_init__(self) -> None:
        self.data = np.ascontiguousarray(np.asarray(self.data, dtype=np.float64))
        if self.data.ndim != 2 or self.data.shape[0] < 1 or self.data.shape[1] < 1:
            raise ValueError("data must be a non-empty 2-D matrix")
        if not np.isfinite(self.data).all():
            raise ValueError("data entries must be finite")
        self.coord_bound = float(np.abs(self.data).max())

    @property
    def n(self) -> int:
        return self.data.shape[0]

    @property
    def dim(self) -> int:
        return self.data.shape[1]


@dataclass
class Query:
    vector: np.ndarray
    coord_bound: float = 0.0

    def __post_init__(self) -> None:
        self.vector = np.ascontiguousarray(np.asarray(self.vector, dtype=np.float64))
        if self.vector.ndim != 1 or self.vector.size < 1:
            raise ValueError("query must be a non-empty 1-D vector")
        if not np.isfinite(self.vector).all():
            raise ValueError("query entries must be finite")
        self.coord_bound = float(np.abs(self.vector).max())

    @property
    def dim(self) -> int:
        return self.vector.size


def _check_dims(vectors: VectorSet, query: Query) -> None:
    if vectors.dim != query.dim:
        raise ValueError(f"dimension mismatch: data {vectors.dim}, query {query.dim}")


def reward_range(vectors: VectorSet, query: Query, kind: ObjectiveKind) -> tuple[float, float]:
    """Interval provably containing every per-coordinate reward f(i, j).

    inner_product: (-Mv*Mq, +Mv*Mq); neg_sq_distance: (-(Mv+Mq)^2, 0), with
    Mv and Mq the coordinate-magnitude bounds.  A zero-width interval (all
    rewards identical, e.g. an all-zero query) raises DegenerateRangeError;
    callers may fall back to returning any K ids, all of which are 0-optimal.
    """
    _check_dims(vectors, query)
    if kind is ObjectiveKind.INNER_PRODUCT:
        half = vectors.coord_bound * query.coord_bound
        lo, hi = -half, half
    elif kind is ObjectiveKind.NEG_SQ_DISTANCE:
        spread = (vectors.coord_bound + query.coord_bound) ** 2
        lo, hi = -spread, 0.0
    else:
        raise ValueError(f"unknown objective kind: {kind!r}")
    if hi - lo <= 0.0:
        raise DegenerateRangeError("reward range has zero width; all means are equal")
    return lo, hi


def build_arms(
    vectors: VectorSet,
    query: Query,
    kind: ObjectiveKind = ObjectiveKind.INNER_PRODUCT,
    seed: int = 0,
    dense_switch: int = DENSE_SWITCH,
) -> list[LazySource]:
    """One lazy reward source per vector; arm ids are the row indices."""
    _check_dims(vectors, query)
    q = query.vector
    data = vectors.data
    arms: list[LazySource] = []
    for i in range(vectors.n):
        row = data[i]
        if kind is ObjectiveKind.INNER_PRODUCT:

            def fn(pos: np.ndarray, row=row) -> np.ndarray:
                return row[pos] * q[pos]

        elif kind is ObjectiveKind.NEG_SQ_DISTANCE:

            def fn(pos: np.ndarray, row=row) -> np.ndarray:
                d = q[pos] - row[pos]
                return -(d * d)

        else:
            raise ValueError(f"unknown objective kind: {kind!r}")
        arms.append(LazySource(i, vectors.dim, fn, seed=seed, dense_switch=dense_switch))
    return arms


def true_means(vectors: VectorSet, query: Query, kind: ObjectiveKind) -> np.ndarray:
    """Exact per-arm means, i.e. score(i)/dim for every row (O(n*dim))."""
    _check_dims(vectors, query)
    if kind is ObjectiveKind.INNER_PRODUCT:
        return vectors.data @ query.vector / vectors.dim
    if kind is ObjectiveKind.NEG_SQ_DISTANCE:
        diff = vectors.data - query.vector
        return -np.einsum("ij,ij->i", diff, diff) / vectors.dim
    raise ValueError(f"unknown objective kind: {kind!r}")


def mips_topk(
    vectors: VectorSet,
    query: Query,
    k: int,
    epsilon: float,
    delta: float,
    seed: int = 0,
    kind: ObjectiveKind = ObjectiveKind.INNER_PRODUCT,
) -> tuple[list[int], EliminationTrace]:
    """Top-K rows by score via the bounded-pull elimination search.

    With probability at least 1 - delta the returned set's K-th best true
    mean is within ``epsilon`` (mean scale) of the K-th best overall.  A
    degenerate reward range (all scores provably equal) short-circuits to
    the first K ids, flagged in ``trace.warning``.
    """
    if not 1 <= k <= vectors.n:
        raise ValueError("k must lie in [1, n]")
    try:
        lo, hi = reward_range(vectors, query, kind)
    except DegenerateRangeError:
        trace = EliminationTrace(returned=list(range(k)))
        trace.warning = "degenerate reward range: all means equal, returning first k ids"
        return list(range(k)), trace
    config = EliminationConfig(
        k=k, epsilon=epsilon, delta=delta, range_width=hi - lo, seed=seed
    )
    arms = build_arms(vectors, query, kind, seed=seed)
    return median_elimination_topk(arms, config)
