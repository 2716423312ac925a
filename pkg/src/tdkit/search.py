"""Exact bounded-depth decision and distance by contraction search.

The duplication distance from a source S to a target T equals the minimum
number of contractions taking T back to S, so the search contracts squares
of T and recurses.  The branching factor is the number of squares of the
current string, which is usually far below the quadratic worst case.

decide_td answers "within k contractions?"; td_distance wraps it in
iterative deepening, so the first witness found has minimal length.
"""

from __future__ import annotations

from dataclasses import dataclass

from .strings import (
    ContractionStep,
    TdkError,
    TokenString,
    _squares,
    feasibility_precheck,
)

STATUS_FOUND = "found"
STATUS_EXCEEDS_BOUND = "exceeds-bound"
STATUS_INFEASIBLE = "infeasible"


@dataclass(frozen=True)
class WitnessStep:
    """One contraction together with the string it applies to."""

    step: ContractionStep
    applied_to: TokenString


@dataclass(frozen=True)
class SearchResult:
    reached: bool
    depth: int | None
    witness: tuple[WitnessStep, ...] | None
    explored: int


@dataclass(frozen=True)
class DistanceResult:
    status: str  # one of STATUS_FOUND / STATUS_EXCEEDS_BOUND / STATUS_INFEASIBLE
    distance: int | None
    witness: tuple[WitnessStep, ...] | None
    explored: int
    max_k: int
    reason: str | None = None

    @property
    def found(self) -> bool:
        return self.status == STATUS_FOUND


def decide_td(source: TokenString, target: TokenString, k: int) -> SearchResult:
    """Is the target within k contractions of the source?

    Exhaustive depth-first search over the contraction tree with a visited
    memo: a string that failed with ``r`` remaining moves is never
    re-expanded with ``r`` or fewer.  States are also cut when they are
    already too short, or too long to halve down to the source in the
    remaining moves (a contraction at most halves the string).
    """
    if k < 0:
        raise ValueError(f"budget k must be >= 0, got {k}")
    if source.table is not target.table:
        raise TdkError("source and target use different symbol tables")
    pre = feasibility_precheck(source, target)
    if not pre.feasible:
        return SearchResult(False, None, None, 0)

    goal = source.tokens
    goal_len = len(goal)
    # tokens -> largest remaining budget known to fail from that string
    failed: dict[tuple[int, ...], int] = {}
    explored = 0

    def dfs(cur: tuple[int, ...], remaining: int):
        nonlocal explored
        explored += 1
        if cur == goal:
            return ()
        if remaining == 0:
            return None
        if len(cur) <= goal_len:
            return None  # contractions strictly shrink; cur != goal
        if len(cur) > goal_len << remaining:
            return None  # cannot even reach the goal length
        if failed.get(cur, -1) >= remaining:
            return None
        for step in _squares(cur):
            cut = step.start + step.half_len
            child = cur[:cut] + cur[step.start + 2 * step.half_len:]
            sub = dfs(child, remaining - 1)
            if sub is not None:
                return ((step, cur),) + sub
        failed[cur] = remaining
        return None

    trace = dfs(target.tokens, k)
    if trace is None:
        return SearchResult(False, None, None, explored)
    witness = tuple(
        WitnessStep(step, TokenString(target.table, toks)) for step, toks in trace
    )
    return SearchResult(True, len(witness), witness, explored)


def td_distance(source: TokenString, target: TokenString, max_k: int) -> DistanceResult:
    """Minimum number of duplications from source to target, up to ``max_k``.

    Iterative deepening over decide_td.  Every contraction removes at least
    one token, so any sequence from target to source has length at most
    ``len(target) - len(source)``; exhausting that bound certifies that the
    target is unreachable, and the result is then Infeasible rather than
    ExceedsBound.
    """
    if max_k < 0:
        raise ValueError(f"max_k must be >= 0, got {max_k}")
    pre = feasibility_precheck(source, target)
    if not pre.feasible:
        return DistanceResult(STATUS_INFEASIBLE, None, None, 0, max_k, pre.reason)
    total = 0
    for depth in range(max_k + 1):
        res = decide_td(source, target, depth)
        total += res.explored
        if res.reached:
            return DistanceResult(STATUS_FOUND, res.depth, res.witness, total, max_k)
    if max_k >= len(target) - len(source):
        return DistanceResult(
            STATUS_INFEASIBLE, None, None, total, max_k, "contraction-count-bound-exhausted"
        )
    return DistanceResult(STATUS_EXCEEDS_BOUND, None, None, total, max_k)


def replay_witness(target: TokenString, witness) -> TokenString:
    """Apply a witness (steps or WitnessSteps) to the target, returning the result."""
    from .strings import apply_contraction

    cur = target
    for item in witness:
        step = item.step if isinstance(item, WitnessStep) else item
        cur = apply_contraction(cur, step)
    return cur
