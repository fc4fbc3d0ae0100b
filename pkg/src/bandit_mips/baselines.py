"""Exhaustive search (the correctness oracle) and a sign-projection LSH baseline.

``naive_topk`` scores every vector against the query and is both the truth
oracle for precision measurements and the cost denominator for speedups
(ops = n * dim scalar multiplies, exactly).

The LSH baseline answers maximum inner product queries through the standard
reduction to near-neighbor search on the unit sphere: scale all data vectors
by the maximum norm so they fit in the unit ball, append the coordinate
sqrt(1 - ||v||^2) to make them unit length, and append 0 to the (normalized)
query; cosine neighbors of the lifted query are then inner-product winners
of the original data.  Hashing is sign-of-random-projection with an AND
width of ``a`` bits per table and an OR construction across ``b`` tables;
query-time candidates are the union of the query's buckets, reranked by
exact inner product.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .mips import ObjectiveKind, Query, VectorSet, true_means

__all__ = ["ExactResult", "naive_topk", "LshIndex", "LshResult", "lsh_build", "lsh_query"]


@dataclass(slots=True)
class ExactResult:
    """Exact top-K: ids in descending score order, their scores, op count."""

    topk_ids: list[int]
    topk_scores: np.ndarray
    ops: int


def naive_topk(
    vectors: VectorSet,
    query: Query,
    k: int,
    kind: ObjectiveKind = ObjectiveKind.INNER_PRODUCT,
) -> ExactResult:
    """Score all n rows, return the K best (score ties keep the smaller id)."""
    if not 1 <= k <= vectors.n:
        raise ValueError("k must lie in [1, n]")
    scores = true_means(vectors, query, kind) * vectors.dim
    order = np.lexsort((np.arange(vectors.n), -scores))[:k]
    return ExactResult(
        topk_ids=[int(i) for i in order],
        topk_scores=scores[order].copy(),
        ops=vectors.n * vectors.dim,
    )


@dataclass
class LshIndex:
    """Sign-projection index over the lifted (dim+1)-space.

    ``planes[t]`` holds table t's ``a`` unit projection directions; table t
    is seeded by (seed, t) alone, so for a fixed seed the same table is
    rebuilt identically regardless of how many tables an index has.  Growing
    b therefore only ever adds candidates.
    """

    a: int
    b: int
    seed: int
    scale: float
    planes: np.ndarray  # (b, a, dim+1)
    tables: list[dict[int, np.ndarray]] = field(default_factory=list)
    dim: int = 0
    n: int = 0


@dataclass(slots=True)
class LshResult:
    ids: list[int]
    scores: np.ndarray
    candidates: int
    ops: int  # candidates * dim reranking + b * a * (dim + 1) hashing
    padded: bool


def _lift_data(data: np.ndarray) -> tuple[np.ndarray, float]:
    norms = np.linalg.norm(data, axis=1)
    scale = float(norms.max())
    if scale == 0.0:
        raise ValueError("cannot index all-zero data")
    scaled = data / scale
    extra = np.sqrt(np.maximum(0.0, 1.0 - (norms / scale) ** 2))
    return np.hstack([scaled, extra[:, None]]), scale


def _lift_query(q: np.ndarray) -> np.ndarray:
    lifted = np.concatenate([q, [0.0]])
    norm = np.linalg.norm(lifted)
    return lifted / norm if norm > 0.0 else lifted


def _keys(planes: np.ndarray, points: np.ndarray) -> np.ndarray:
    # points (m, d+1) x planes (a, d+1) -> integer key per point from sign bits
    bits = points @ planes.T > 0.0
    weights = 1 << np.arange(planes.shape[0], dtype=np.int64)
    return bits @ weights


def lsh_build(vectors: VectorSet, a: int, b: int, seed: int = 0) -> LshIndex:
    """Hash all rows into b tables of a sign bits each."""
    if a < 1 or b < 1:
        raise ValueError("a and b must be at least 1")
    lifted, scale = _lift_data(vectors.data)
    dim_l = lifted.shape[1]
    planes = np.empty((b, a, dim_l))
    tables: list[dict[int, np.ndarray]] = []
    for t in range(b):
        rng = np.random.default_rng(np.random.SeedSequence([seed, t]))
        directions = rng.standard_normal((a, dim_l))
        directions /= np.linalg.norm(directions, axis=1, keepdims=True)
        planes[t] = directions
        keys = _keys(directions, lifted)
        order = np.argsort(keys, kind="stable")
        sorted_keys = keys[order]
        starts = np.flatnonzero(np.r_[True, sorted_keys[1:] != sorted_keys[:-1]])
        bounds = np.r_[starts, keys.size]
        table = {
            int(sorted_keys[s]): order[s:e] for s, e in zip(starts, bounds[1:])
        }
        tables.append(table)
    return LshIndex(
        a=a, b=b, seed=seed, scale=scale, planes=planes, tables=tables,
        dim=vectors.dim, n=vectors.n,
    )


def lsh_query(
    index: LshIndex,
    vectors: VectorSet,
    query: Query,
    k: int,
    b_use: int | None = None,
) -> LshResult:
    """Union the query's buckets, rerank candidates exactly, pad if short.

    ``b_use`` restricts the lookup to the first b_use tables (their hashes
    are identical to a standalone index with b = b_use, see LshIndex), which
    lets one index serve a whole OR-width sweep.  Padding fills with the
    smallest ids not already present and sets the flag.
    """
    if index.n != vectors.n or index.dim != vectors.dim:
        raise ValueError("index was built over a different vector set")
    if not 1 <= k <= index.n:
        raise ValueError("k must lie in [1, n]")
    b = index.b if b_use is None else b_use
    if not 1 <= b <= index.b:
        raise ValueError("b_use must lie in [1, index.b]")
    lifted_q = _lift_query(query.vector)
    buckets = []
    for t in range(b):
        key = int(_keys(index.planes[t], lifted_q[None, :])[0])
        hit = index.tables[t].get(key)
        if hit is not None:
            buckets.append(hit)
    if buckets:
        cands = np.unique(np.concatenate(buckets))
    else:
        cands = np.empty(0, dtype=np.int64)
    n_cands = int(cands.size)
    ops = n_cands * index.dim + b * index.a * (index.dim + 1)

    padded = n_cands < k
    if n_cands:
        scores = vectors.data[cands] @ query.vector
        order = np.lexsort((cands, -scores))[:k]
        ids = [int(cands[i]) for i in order]
        kept_scores = scores[order]
    else:
        ids, kept_scores = [], np.empty(0)
    if padded:
        have = set(ids)
        filler = [i for i in range(index.n) if i not in have][: k - len(ids)]
        ids.extend(filler)
        kept_scores = np.concatenate([kept_scores, vectors.data[filler] @ query.vector])
    return LshResult(ids=ids, scores=kept_scores, candidates=n_cands, ops=ops, padded=padded)
