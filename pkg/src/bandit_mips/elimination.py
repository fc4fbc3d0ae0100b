"""Round-based halving search for the top-K arms under bounded pulls.

Each round pulls every surviving arm up to a shared cumulative target chosen
so that, with the round's slice of the confidence budget, empirical means
separate the keepers from the half being dropped.  The round accuracy and
confidence follow the fixed schedule

    eps_l = (eps/4) * (3/4)^(l-1),    delta_l = delta / 2^l,

whose sums over all rounds stay within eps and delta.  Every round removes
ceil((s - K)/2) of the s survivors, so the excess over K at least halves and
the loop ends after at most ceil(log2 n) + 1 rounds with exactly K arms.
Per-arm pulls never exceed the list length N: once the target reaches N the
survivors are measured exactly and later rounds add no pulls.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .arms import ArmState, RewardSource, pull_batch
from .bounds import hoeffding_count, pull_target

__all__ = [
    "EliminationConfig",
    "RoundRecord",
    "EliminationTrace",
    "elimination_schedule",
    "round_pull_target",
    "eliminate",
    "median_elimination_topk",
]


@dataclass(slots=True)
class EliminationConfig:
    """Search parameters for one top-K run.

    ``epsilon`` is on the scale of the rewards' mean (suboptimality of the
    returned set stays below it with probability at least 1 - delta) and may
    be 0, which forces exhaustive, exact evaluation.  ``range_width`` is the
    b - a spread the rewards are known to lie in.  ``seed`` is recorded so a
    run can be reproduced; the reward sources own the actual RNG streams.
    """

    k: int
    epsilon: float
    delta: float
    range_width: float = 1.0
    seed: int = 0
    objective_sign: str = "maximize"

    def __post_init__(self) -> None:
        if self.k < 1:
            raise ValueError("k must be at least 1")
        if self.epsilon < 0.0 or not math.isfinite(self.epsilon):
            raise ValueError("epsilon must be finite and non-negative")
        if not 0.0 < self.delta < 1.0:
            raise ValueError("delta must lie in (0, 1)")
        if self.range_width <= 0.0:
            raise ValueError("range_width must be positive")
        if self.objective_sign != "maximize":
            raise ValueError("only maximization is supported")


@dataclass(slots=True)
class RoundRecord:
    """One elimination round: sizes, budget slice, cumulative pull target."""

    round_index: int
    survivors: int
    epsilon_round: float
    delta_round: float
    pull_target: int


@dataclass(slots=True)
class EliminationTrace:
    rounds: list[RoundRecord] = field(default_factory=list)
    returned: list[int] = field(default_factory=list)
    returned_means: list[float] = field(default_factory=list)
    total_pulls: int = 0
    max_arm_pulls: int = 0
    warning: str | None = None


def elimination_schedule(epsilon: float, delta: float, round_index: int) -> tuple[float, float]:
    """Accuracy and confidence assigned to round ``round_index`` (1-based).

    Geometric splits: sum of eps_l over all rounds equals epsilon, sum of
    delta_l equals delta.
    """
    if round_index < 1:
        raise ValueError("round_index starts at 1")
    eps_l = (epsilon / 4.0) * (0.75 ** (round_index - 1))
    delta_l = delta / (2.0**round_index)
    return eps_l, delta_l


def round_pull_target(
    survivors: int,
    k: int,
    epsilon_round: float,
    delta_round: float,
    range_width: float,
    list_len: int,
) -> int:
    """Cumulative per-arm pull count needed by one round.

    The round must, with confidence delta_round spread over the survivors,
    estimate each mean to epsilon_round/2 per tail; both tails and the union
    bound fold into a single Hoeffding count

        u = (2 range_width^2 / eps_l^2) * ln(2(s-K) / (delta_l (floor((s-K)/2)+1)))

    which ``sample_size`` then shrinks for the finite list.  eps_l = 0 jumps
    straight to exhaustion (target N, exact means).
    """
    if survivors <= k:
        raise ValueError("survivors must exceed k")
    if epsilon_round == 0.0:
        return list_len
    excess = survivors - k
    per_tail_delta = delta_round * (excess // 2 + 1) / (2.0 * excess)
    u = hoeffding_count(epsilon_round / 2.0, per_tail_delta, range_width)
    return pull_target(u, list_len)


def eliminate(survivors: list[ArmState], k: int) -> list[ArmState]:
    """Drop the ceil((s - k)/2) arms with the least empirical means.

    Ties on the mean drop the larger arm id first, making the outcome a pure
    function of (means, ids).  Kept arms come back in their input order with
    their cumulative state intact.
    """
    s = len(survivors)
    if s <= k:
        raise ValueError("survivors must exceed k")
    drop_count = (s - k + 1) // 2
    order = sorted(survivors, key=lambda a: (a.empirical_mean, -a.arm_id))
    dropped = {a.arm_id for a in order[:drop_count]}
    return [a for a in survivors if a.arm_id not in dropped]


def median_elimination_topk(
    sources: list[RewardSource], config: EliminationConfig
) -> tuple[list[int], EliminationTrace]:
    """Return K arm ids whose K-th best true mean is epsilon-close to optimal.

    The guarantee holds with probability at least 1 - delta when rewards are
    drawn without replacement in uniform order and lie within range_width.
    Returned ids are ordered by decreasing empirical mean (ties by id).  The
    trace carries per-round budgets and targets, total pulls across all arms
    including eliminated ones, and the per-arm maximum.

    If there are at most K arms, all of them are returned with zero pulls.
    """
    n = len(sources)
    if n < 1:
        raise ValueError("need at least one source")
    ids = [s.arm_id for s in sources]
    if len(set(ids)) != n:
        raise ValueError("arm ids must be unique")
    list_len = sources[0].list_len
    if any(s.list_len != list_len for s in sources):
        raise ValueError("all reward lists must share one length")

    trace = EliminationTrace()
    if n <= config.k:
        trace.returned = sorted(ids)
        return list(trace.returned), trace

    alive: list[tuple[RewardSource, ArmState]] = [(s, ArmState(s.arm_id)) for s in sources]
    all_states = [st for _, st in alive]
    target_prev = 0
    round_index = 1
    while len(alive) > config.k:
        eps_l, delta_l = elimination_schedule(config.epsilon, config.delta, round_index)
        target = round_pull_target(
            len(alive), config.k, eps_l, delta_l, config.range_width, list_len
        )
        target = max(target, target_prev)  # increments are never negative
        increment = target - target_prev
        if increment:
            for source, state in alive:
                pull_batch(source, state, increment)
        trace.rounds.append(RoundRecord(round_index, len(alive), eps_l, delta_l, target))
        kept = eliminate([st for _, st in alive], config.k)
        kept_ids = {st.arm_id for st in kept}
        alive = [(src, st) for src, st in alive if st.arm_id in kept_ids]
        target_prev = target
        round_index += 1

    trace.total_pulls = sum(st.pulls for st in all_states)
    trace.max_arm_pulls = max(st.pulls for st in all_states)
    final = sorted((st for _, st in alive), key=lambda a: (-a.empirical_mean, a.arm_id))
    trace.returned = [st.arm_id for st in final]
    trace.returned_means = [st.empirical_mean for st in final]
    return list(trace.returned), trace
