"""Experiment runners: PAC validation, method comparison, single queries.

Speedups are reported two ways.  Op-count speedup divides the exhaustive
cost n*N by the work the method actually did (reward pulls for the bandit,
hash + rerank multiplies for LSH); it is deterministic and is what the
acceptance checks gate on.  Wall-clock speedup divides measured times and is
recorded for orientation only.  ``run_validate`` writes wall_ms as 0.0
unless asked, so its results file is byte-identical across reruns with one
master seed.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field

import numpy as np

from .baselines import lsh_build, lsh_query, naive_topk
from .datasets import DatasetSpec, gen_adversarial
from .elimination import EliminationConfig, median_elimination_topk
from .fileio import read_dataset, read_query, write_curve, write_results
from .metrics import percentile, precision, suboptimality
from .mips import (
    DegenerateRangeError,
    ObjectiveKind,
    Query,
    VectorSet,
    mips_topk,
    reward_range,
    true_means,
)

__all__ = [
    "RunRecord",
    "ValidateCell",
    "ValidateReport",
    "CompareReport",
    "derive_seed",
    "top_ids",
    "run_validate",
    "run_compare",
    "run_query",
    "me_dominates",
]

ME = "median_elimination"
LSH = "lsh"
NAIVE = "naive"


def derive_seed(*parts: int) -> int:
    """Deterministic 64-bit seed from integer parts (order matters)."""
    mixed = np.random.SeedSequence([int(p) & 0xFFFFFFFFFFFFFFFF for p in parts])
    return int(mixed.generate_state(1, np.uint64)[0])


def top_ids(means, k: int) -> list[int]:
    """Ids of the k largest means; ties keep the smaller id."""
    means = np.asarray(means, dtype=np.float64)
    order = np.lexsort((np.arange(means.size), -means))[:k]
    return [int(i) for i in order]


@dataclass(slots=True)
class RunRecord:
    """One method execution on one instance, in results-file shape."""

    method: str
    params: dict
    k: int
    epsilon: float | None
    delta: float | None
    seed: int
    returned: list[int]
    precision: float
    suboptimality: float
    pulls_total: int
    ops_naive: int
    wall_ms: float
    speedup_wall: float = 0.0

    @property
    def speedup_ops(self) -> float:
        if self.pulls_total == 0:
            return math.inf
        return self.ops_naive / self.pulls_total

    def row(self) -> dict:
        return {
            "method": self.method,
            "params": self.params,
            "k": self.k,
            "epsilon": self.epsilon,
            "delta": self.delta,
            "seed": self.seed,
            "precision": self.precision,
            "suboptimality": self.suboptimality,
            "pulls_total": self.pulls_total,
            "ops_naive": self.ops_naive,
            "wall_ms": self.wall_ms,
        }


@dataclass(slots=True)
class ValidateCell:
    epsilon: float
    delta: float
    percentile_suboptimality: float
    failure_fraction: float  # fraction of runs with suboptimality > epsilon
    passed: bool


@dataclass(slots=True)
class ValidateReport:
    records: list[RunRecord]
    cells: list[ValidateCell]
    mean_percentile_by_epsilon: dict[float, float]
    all_passed: bool


def run_validate(
    epsilons,
    deltas,
    *,
    n: int = 500,
    list_len: int = 5000,
    k: int = 1,
    runs: int = 20,
    seed: int = 0,
    out=None,
    record_wall: bool = False,
) -> ValidateReport:
    """Adversarial-instance PAC check over an (epsilon, delta) grid.

    Every cell runs ``runs`` fresh adversarial instances and passes when the
    (1 - delta)-percentile of the observed suboptimalities is at most
    epsilon.  Records carry wall_ms = 0.0 unless ``record_wall`` so that the
    results file is a pure function of the master seed.
    """
    epsilons = list(epsilons)
    deltas = list(deltas)
    if not epsilons or not deltas or runs < 1:
        raise ValueError("need at least one epsilon, one delta, and one run")
    records: list[RunRecord] = []
    cells: list[ValidateCell] = []
    for ei, eps in enumerate(epsilons):
        for di, delta in enumerate(deltas):
            subopts: list[float] = []
            for r in range(runs):
                instance_seed = derive_seed(seed, 1, ei, di, r)
                algorithm_seed = derive_seed(seed, 2, ei, di, r)
                instance = gen_adversarial(
                    DatasetSpec("adversarial", n, list_len, instance_seed)
                )
                config = EliminationConfig(
                    k=k, epsilon=eps, delta=delta, range_width=1.0, seed=algorithm_seed
                )
                start = time.perf_counter()
                ids, trace = median_elimination_topk(instance.sources(), config)
                wall_ms = (time.perf_counter() - start) * 1e3 if record_wall else 0.0
                sub = suboptimality(ids, instance.list_means, k)
                subopts.append(sub)
                records.append(
                    RunRecord(
                        method=ME,
                        params={
                            "n": n,
                            "list_len": list_len,
                            "instance_seed": instance_seed,
                            "algorithm_seed": algorithm_seed,
                            "rounds": len(trace.rounds),
                            "max_arm_pulls": trace.max_arm_pulls,
                        },
                        k=k,
                        epsilon=eps,
                        delta=delta,
                        seed=seed,
                        returned=ids,
                        precision=precision(ids, top_ids(instance.list_means, k), k),
                        suboptimality=sub,
                        pulls_total=trace.total_pulls,
                        ops_naive=n * list_len,
                        wall_ms=wall_ms,
                    )
                )
            cell_percentile = percentile(subopts, 1.0 - delta)
            cells.append(
                ValidateCell(
                    epsilon=eps,
                    delta=delta,
                    percentile_suboptimality=cell_percentile,
                    failure_fraction=sum(s > eps for s in subopts) / runs,
                    passed=cell_percentile <= eps,
                )
            )
    by_eps: dict[float, float] = {}
    for eps in epsilons:
        vals = [c.percentile_suboptimality for c in cells if c.epsilon == eps]
        by_eps[eps] = sum(vals) / len(vals)
    report = ValidateReport(
        records=records,
        cells=cells,
        mean_percentile_by_epsilon=by_eps,
        all_passed=all(c.passed for c in cells),
    )
    if out is not None:
        write_results(out, (rec.row() for rec in records))
    return report


@dataclass(slots=True)
class CompareReport:
    records: list[RunRecord]
    curve: list[dict]
    naive_wall_ms: float


def _knob_me(eps_label: str, value: float, delta: float) -> str:
    return f"{eps_label}={value:g},delta={delta:g}"


def run_compare(
    vectors: VectorSet,
    queries: list[Query],
    k: int,
    *,
    methods=(NAIVE, ME, LSH),
    me_epsilons=None,
    me_eps_fracs=(0.1, 0.2, 0.4, 0.8, 1.2, 1.6, 2.4, 3.2),
    me_deltas=(0.1,),
    lsh_a=(4, 8, 16),
    lsh_b=(1, 5, 15, 50),
    seed: int = 0,
    kind: ObjectiveKind = ObjectiveKind.INNER_PRODUCT,
    out=None,
) -> CompareReport:
    """Precision-versus-speedup sweep of the configured methods.

    The bandit sweeps epsilon: either ``me_epsilons`` (absolute, mean scale)
    or, by default, ``me_eps_fracs`` interpreted as fractions of each
    query's reward-range width, which keeps one knob meaningful across
    queries of different magnitudes.  LSH sweeps the (a, b) grid, building
    one index per ``a`` at the largest ``b`` and answering smaller OR-widths
    from prefixes of its tables (identical hashes by construction).  Index
    build time is excluded from query costs, matching how preprocessing-free
    and preprocessing-heavy methods are usually contrasted.

    Curve points aggregate over all queries: mean precision against the
    exact top-K, total naive ops over total spent ops, total naive wall time
    over total spent wall time.
    """
    known = {NAIVE, ME, LSH}
    methods = tuple(methods)
    unknown = set(methods) - known
    if unknown:
        raise ValueError(f"unknown methods: {sorted(unknown)}")
    if not queries:
        raise ValueError("need at least one query")
    n, dim = vectors.n, vectors.dim
    ops_naive = n * dim

    records: list[RunRecord] = []
    curve: list[tuple[tuple, dict]] = []  # (sort key, row)

    truth_ids: list[list[int]] = []
    means_per_query: list[np.ndarray] = []
    naive_wall = 0.0
    for query in queries:
        start = time.perf_counter()
        exact = naive_topk(vectors, query, k, kind)
        naive_wall += time.perf_counter() - start
        truth_ids.append(exact.topk_ids)
        means_per_query.append(true_means(vectors, query, kind))
    naive_wall_per_query = naive_wall / len(queries)

    if NAIVE in methods:
        for qi, query in enumerate(queries):
            records.append(
                RunRecord(
                    method=NAIVE,
                    params={"query": qi},
                    k=k,
                    epsilon=None,
                    delta=None,
                    seed=seed,
                    returned=list(truth_ids[qi]),
                    precision=1.0,
                    suboptimality=0.0,
                    pulls_total=ops_naive,
                    ops_naive=ops_naive,
                    wall_ms=naive_wall_per_query * 1e3,
                    speedup_wall=1.0,
                )
            )
        curve.append(
            (
                (NAIVE, 0.0, 0.0),
                {
                    "method": NAIVE,
                    "knob": "exhaustive",
                    "precision": 1.0,
                    "speedup_ops": 1.0,
                    "speedup_wall": 1.0,
                },
            )
        )

    if ME in methods:
        if me_epsilons is not None:
            knob_values = [(float(e), "epsilon") for e in me_epsilons]
        else:
            knob_values = [(float(f), "eps_frac") for f in me_eps_fracs]
        for di, delta in enumerate(me_deltas):
            for vi, (value, label) in enumerate(knob_values):
                group: list[RunRecord] = []
                for qi, query in enumerate(queries):
                    if label == "epsilon":
                        eps_abs = value
                    else:
                        try:
                            lo, hi = reward_range(vectors, query, kind)
                            eps_abs = value * (hi - lo)
                        except DegenerateRangeError:
                            eps_abs = 0.0
                    run_seed = derive_seed(seed, 3, di, vi, qi)
                    start = time.perf_counter()
                    ids, trace = mips_topk(
                        vectors, query, k, eps_abs, delta, seed=run_seed, kind=kind
                    )
                    wall = time.perf_counter() - start
                    rec = RunRecord(
                        method=ME,
                        params={
                            label: value,
                            "query": qi,
                            "rounds": len(trace.rounds),
                            "max_arm_pulls": trace.max_arm_pulls,
                        },
                        k=k,
                        epsilon=eps_abs,
                        delta=delta,
                        seed=run_seed,
                        returned=ids,
                        precision=precision(ids, truth_ids[qi], k),
                        suboptimality=suboptimality(ids, means_per_query[qi], k),
                        pulls_total=trace.total_pulls,
                        ops_naive=ops_naive,
                        wall_ms=wall * 1e3,
                        speedup_wall=naive_wall_per_query / wall if wall > 0 else math.inf,
                    )
                    if rec.pulls_total > rec.ops_naive:
                        raise AssertionError("bandit exceeded the pull bound n*N")
                    group.append(rec)
                records.extend(group)
                curve.append(
                    (
                        (ME, float(delta), value),
                        {
                            "method": ME,
                            "knob": _knob_me(label, value, delta),
                            "precision": float(np.mean([g.precision for g in group])),
                            "speedup_ops": ops_naive
                            * len(group)
                            / max(sum(g.pulls_total for g in group), 1),
                            "speedup_wall": naive_wall
                            / max(sum(g.wall_ms for g in group) / 1e3, 1e-12),
                        },
                    )
                )

    if LSH in methods:
        b_max = max(lsh_b)
        for a in sorted(set(int(x) for x in lsh_a)):
            index = lsh_build(vectors, a, b_max, seed=derive_seed(seed, 4, a))
            for b in sorted(set(int(x) for x in lsh_b)):
                group = []
                for qi, query in enumerate(queries):
                    start = time.perf_counter()
                    res = lsh_query(index, vectors, query, k, b_use=b)
                    wall = time.perf_counter() - start
                    group.append(
                        RunRecord(
                            method=LSH,
                            params={
                                "a": a,
                                "b": b,
                                "query": qi,
                                "candidates": res.candidates,
                                "padded": res.padded,
                            },
                            k=k,
                            epsilon=None,
                            delta=None,
                            seed=index.seed,
                            returned=list(res.ids),
                            precision=precision(res.ids, truth_ids[qi], k),
                            suboptimality=suboptimality(res.ids, means_per_query[qi], k),
                            pulls_total=res.ops,
                            ops_naive=ops_naive,
                            wall_ms=wall * 1e3,
                            speedup_wall=naive_wall_per_query / wall if wall > 0 else math.inf,
                        )
                    )
                records.extend(group)
                curve.append(
                    (
                        (LSH, float(a), float(b)),
                        {
                            "method": LSH,
                            "knob": f"a={a},b={b}",
                            "precision": float(np.mean([g.precision for g in group])),
                            "speedup_ops": ops_naive
                            * len(group)
                            / max(sum(g.pulls_total for g in group), 1),
                            "speedup_wall": naive_wall
                            / max(sum(g.wall_ms for g in group) / 1e3, 1e-12),
                        },
                    )
                )

    curve.sort(key=lambda pair: pair[0])
    curve_rows = [row for _, row in curve]
    report = CompareReport(
        records=records, curve=curve_rows, naive_wall_ms=naive_wall_per_query * 1e3
    )
    if out is not None:
        write_curve(out, curve_rows)
    return report


def me_dominates(curve_rows, min_speedup: float = 5.0) -> tuple[bool, list[str]]:
    """Does the bandit match or beat LSH precision at every matched speedup?

    For each LSH curve point at op-speedup s >= min_speedup there must be a
    bandit point at op-speedup >= s whose precision is at least as high.
    Returns (ok, list of violation descriptions).
    """
    me_points = [
        (row["speedup_ops"], row["precision"]) for row in curve_rows if row["method"] == ME
    ]
    failures: list[str] = []
    for row in curve_rows:
        if row["method"] != LSH or row["speedup_ops"] < min_speedup:
            continue
        matched = [p for s, p in me_points if s >= row["speedup_ops"]]
        if not matched:
            failures.append(
                f"no bandit point at speedup >= {row['speedup_ops']:.1f} ({row['knob']})"
            )
        elif max(matched) < row["precision"] - 1e-12:
            failures.append(
                f"lsh {row['knob']} at speedup {row['speedup_ops']:.1f}: "
                f"precision {row['precision']:.3f} > best matched bandit {max(matched):.3f}"
            )
    return not failures, failures


def run_query(
    data_path,
    query_path,
    k: int,
    epsilon: float,
    delta: float,
    seed: int = 0,
    kind: ObjectiveKind = ObjectiveKind.INNER_PRODUCT,
) -> dict:
    """Answer one query from files; returns a printable result summary.

    Estimated scores are empirical mean times dimension, i.e. the bandit's
    estimate of the full inner product.
    """
    vectors = read_dataset(data_path)
    query = read_query(query_path)
    start = time.perf_counter()
    ids, trace = mips_topk(vectors, query, k, epsilon, delta, seed=seed, kind=kind)
    wall_ms = (time.perf_counter() - start) * 1e3
    pulls = trace.total_pulls
    ops_naive = vectors.n * vectors.dim
    return {
        "ids": ids,
        "estimated_scores": [m * vectors.dim for m in trace.returned_means] or None,
        "k": k,
        "epsilon": epsilon,
        "delta": delta,
        "seed": seed,
        "objective": kind.value,
        "rounds": len(trace.rounds),
        "pulls_total": pulls,
        "ops_naive": ops_naive,
        "speedup_ops": ops_naive / pulls if pulls else math.inf,
        "wall_ms": wall_ms,
        "warning": trace.warning,
    }
