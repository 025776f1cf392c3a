"""Brute-force minimax adversary for small horizons.

The adversary's only freedom against a partition-based policy is which
tested point is the running argmax at each step: the remaining interval is
determined by that choice alone, so the infinite space of unimodal
functions collapses to a finite branch tree.  Enumerating every branch and
taking the worst final accuracy gives an oracle value that is computed with
none of the closed-form analysis, which the analytic formulas are then
checked against.  Ties are excluded: the worst case is approached by
strictly unimodal functions with strict comparisons.

Each enumerated branch is realizable, and :func:`witness_function` builds an
explicit piecewise-linear strictly-unimodal witness: points are ranked by
how long they survive elimination (later is better) and, within a rank, by
closeness to the peak, which is planted a hair inside the far end of the
branch's final interval.  Replaying the witness through the runtime
reproduces the branch exactly and realizes the branch accuracy up to the
planting offset.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional, Union

from .exactnum import Q, QuadNum, format_exact
from .policies import (
    Fibonacci,
    Golden,
    PlainState,
    PolicySpec,
    next_tests,
    validate_policy,
)

ExactNumber = Union[int, Fraction, QuadNum]


class BranchCapExceededError(RuntimeError):
    pass


@dataclass(frozen=True)
class RoundRecord:
    """One policy step of a branch: what was tested and what the adversary chose."""

    new_points: tuple[ExactNumber, ...]
    candidates: tuple[ExactNumber, ...]  # retained point plus new points, ascending
    argmax_index: int
    interval_after: tuple[ExactNumber, ExactNumber]
    retained_after: ExactNumber


@dataclass(frozen=True)
class OutcomeBranch:
    """A full play of the adversary: argmax choices round by round."""

    choices: tuple[int, ...]
    rounds: tuple[RoundRecord, ...]
    final_delta: ExactNumber


def eliminate_cells(
    a: ExactNumber, b: ExactNumber, candidates: tuple[ExactNumber, ...], argmax_index: int
) -> tuple[ExactNumber, ExactNumber, ExactNumber]:
    """Neighbor rule: keep the two gaps adjacent to the argmax point."""
    left = candidates[argmax_index - 1] if argmax_index > 0 else a
    right = candidates[argmax_index + 1] if argmax_index < len(candidates) - 1 else b
    return left, right, candidates[argmax_index]


def _is_single_test_policy(policy: PolicySpec) -> bool:
    return isinstance(policy, (Fibonacci, Golden))


def _steps_for_round(policy: PolicySpec, n_new: int) -> int:
    # the classical policies count tests; block policies count block steps
    return n_new if _is_single_test_policy(policy) else 1


def _estimate_branches(policy: PolicySpec, steps: int) -> int:
    """Branch count from the policies' fixed per-round candidate counts."""
    if _is_single_test_policy(policy):
        return max(2 ** (steps - 1), 1)
    from .policies import EvenBlock, TwoTestSpecial

    if isinstance(policy, EvenBlock):
        first, later = 2 * policy.i, 2 * policy.i + 1
    elif isinstance(policy, TwoTestSpecial):
        first, later = 2, 3
    else:
        first, later = 2 * policy.i - 1, 2 * policy.i
    return first * later ** (steps - 1)


def worst_branches(
    policy: PolicySpec, steps: int, branch_cap: int = 10**6
) -> tuple[ExactNumber, list[OutcomeBranch]]:
    """Worst-case accuracy after ``steps`` steps and the branches attaining it."""
    validate_policy(policy)
    if steps < 1:
        raise ValueError("steps must be >= 1")
    if _estimate_branches(policy, steps) > branch_cap:
        raise BranchCapExceededError(
            f"branch tree exceeds the cap of {branch_cap}; reduce the horizon"
        )

    if _is_single_test_policy(policy) and steps == 1:
        # a single test constrains nothing: the accuracy is the longer side
        pts = next_tests(PlainState(Q(0), Q(1), None, 1, 0), policy)
        x1 = pts[-1]
        round_ = RoundRecord((x1,), (x1,), 0, (Q(0), Q(1)), x1)
        delta = max(x1, 1 - x1)
        return delta, [OutcomeBranch((0,), (round_,), delta)]

    worst: Optional[ExactNumber] = None
    branches: list[OutcomeBranch] = []

    def recurse(state: PlainState, done: int, rounds: tuple, choices: tuple) -> None:
        nonlocal worst, branches
        if done >= steps:
            c, (a, b) = rounds[-1].retained_after, rounds[-1].interval_after
            delta = max(c - a, b - c)
            if worst is None or delta > worst:
                worst, branches = delta, [OutcomeBranch(choices, rounds, delta)]
            elif delta == worst:
                branches.append(OutcomeBranch(choices, rounds, delta))
            return
        pts = next_tests(state, policy)
        if not pts:
            raise ValueError(f"policy ends after {done} steps, cannot reach {steps}")
        cands = tuple(sorted(pts + ([state.retained] if state.retained is not None else [])))
        advance = _steps_for_round(policy, len(pts))
        for j in range(len(cands)):
            a2, b2, c2 = eliminate_cells(state.a, state.b, cands, j)
            rec = RoundRecord(tuple(pts), cands, j, (a2, b2), c2)
            nxt = PlainState(a2, b2, c2, state.step_local + 1, done + advance)
            recurse(nxt, done + advance, rounds + (rec,), choices + (j,))

    recurse(PlainState(Q(0), Q(1), None, 1, 0), 0, (), ())
    assert worst is not None
    return worst, branches


def worst_case_accuracy(policy: PolicySpec, steps: int, branch_cap: int = 10**6) -> ExactNumber:
    return worst_branches(policy, steps, branch_cap)[0]


# ---------------------------------------------------------------------------
# Witness construction


@dataclass(frozen=True)
class Witness:
    """Piecewise-linear strictly unimodal function realizing a branch.

    Breakpoints hold exact abscissas with integer values; the peak sits at
    ``peak`` strictly inside the branch's final interval, one planting
    offset from its far end.  Calling the witness evaluates by linear
    interpolation on the float image of the breakpoints (exact at the
    breakpoints themselves, which is all a replay visits).
    """

    breakpoints: tuple[tuple[ExactNumber, int], ...]  # ascending x, incl. domain ends
    peak: ExactNumber
    peak_value: int

    def __post_init__(self):
        object.__setattr__(self, "_fx", [float(x) for x, _ in self.breakpoints])
        object.__setattr__(self, "_fv", [float(v) for _, v in self.breakpoints])
        if any(x >= y for x, y in zip(self._fx, self._fx[1:])):
            raise AssertionError("witness breakpoints collide in float precision")

    def __call__(self, x: float) -> float:
        import bisect

        fx, fv = self._fx, self._fv
        if x <= fx[0]:
            return fv[0]
        if x >= fx[-1]:
            return fv[-1]
        k = bisect.bisect_right(fx, x)
        if fx[k - 1] == x:
            return fv[k - 1]
        t = (x - fx[k - 1]) / (fx[k] - fx[k - 1])
        return fv[k - 1] + t * (fv[k] - fv[k - 1])

    def to_json(self) -> str:
        return json.dumps(
            {
                "breakpoints": [
                    {"x": float(x), "x_exact": format_exact(x), "value": v}
                    for x, v in self.breakpoints
                ],
                "peak": {
                    "x": float(self.peak),
                    "x_exact": format_exact(self.peak),
                    "value": self.peak_value,
                },
            },
            indent=2,
        )


def witness_function(policy: PolicySpec, steps: int, branch: OutcomeBranch) -> Witness:
    """Build a strictly unimodal witness whose replay reproduces ``branch``.

    Rank every tested point by the round it stopped being interior (the
    branch's retained point outranks everything), then within a rank by
    closeness to the planted peak; assigning increasing integer values in
    that order makes each round's argmax strictly dominate its competitors
    while keeping both flanks strictly monotone.
    """
    last = branch.rounds[-1]
    a_n, b_n = last.interval_after
    c_n = last.retained_after
    left_len, right_len = c_n - a_n, b_n - c_n
    if left_len >= right_len:
        far_len = left_len
        peak = a_n + far_len / 2**40
    else:
        far_len = right_len
        peak = b_n - far_len / 2**40

    # survival round of each tested point (the final retained point lasts longest)
    survival: dict = {}
    for r_idx, rnd in enumerate(branch.rounds, start=1):
        for j, cand in enumerate(rnd.candidates):
            if j != rnd.argmax_index:
                survival[cand] = r_idx
    survival[c_n] = len(branch.rounds) + 1

    def closeness(z: ExactNumber):
        d = peak - z if z < peak else z - peak
        return d

    ordered = sorted(survival.keys())
    by_rank: dict[int, list] = {}
    for z in ordered:
        by_rank.setdefault(survival[z], []).append(z)
    value: dict = {}
    v = 0
    for rank in sorted(by_rank):
        # within a rank: farther from the peak gets the smaller value
        for z in sorted(by_rank[rank], key=closeness, reverse=True):
            v += 1
            value[z] = v
    peak_value = v + 1

    # strictly monotone flanks, by construction; verify before trusting it
    below = [z for z in ordered if z < peak]
    above = [z for z in ordered if z > peak]
    if any(value[x] >= value[y] for x, y in zip(below, below[1:])):
        raise AssertionError("witness left flank is not strictly increasing")
    if any(value[x] <= value[y] for x, y in zip(above, above[1:])):
        raise AssertionError("witness right flank is not strictly decreasing")

    left_min = value[below[0]] if below else peak_value
    right_min = value[above[-1]] if above else peak_value
    bps = [(Q(0), left_min - 1)]
    bps += [(z, value[z]) for z in below]
    bps.append((peak, peak_value))
    bps += [(z, value[z]) for z in above]
    bps.append((Q(1), right_min - 1))
    return Witness(tuple(bps), peak, peak_value)
