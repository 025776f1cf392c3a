"""Execute policies against real measurements.

Positions are kept exact end to end: test points are computed in exact
arithmetic, converted to float only for presentation and for calling the
objective.  Measured values are floats.  Elimination keeps the two gaps
adjacent to the argmax of the tested points inside the current interval;
an exact tie for the argmax leaves no interior tested point, in which case
the remaining interval is treated as a fresh initial interval and the
policy's step-local schedule restarts (the global step counter keeps
counting).  Tie detection is exact float equality only: near-ties are
strict comparisons, since softening them would change the policy semantics.

When the true maximum sits at an interval endpoint the elimination still
shrinks the interval toward it; the retained point then tracks the nearest
tested point, which is all the accuracy guarantee needs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Callable, Optional, Sequence, Union

from .exactnum import Q, QuadNum
from .policies import (
    PolicySpec,
    exact_number,
    next_tests,
    policy_finished,
    validate_policy,
)
from .oracle import eliminate_cells

ExactNumber = Union[int, Fraction, QuadNum]

#: relative tolerance for matching user-supplied point floats to pending exact points
POINT_MATCH_RTOL = 1e-12


class SubmissionError(ValueError):
    """Submitted values do not cover exactly the pending test points."""


@dataclass(frozen=True)
class SearchState:
    policy: PolicySpec
    a: ExactNumber
    b: ExactNumber
    retained: Optional[ExactNumber]
    retained_value: Optional[float]
    step_local: int  # 1-based index of the upcoming step in the current context
    steps_done: int
    pending: tuple[ExactNumber, ...]
    history: tuple[tuple[ExactNumber, float], ...]
    status: str  # "running" | "finished"

    @property
    def interval(self) -> tuple[ExactNumber, ExactNumber]:
        return (self.a, self.b)

    def bound(self) -> ExactNumber:
        """Guaranteed distance from the best tested point to the true maximizer."""
        if self.retained is None:
            return self.b - self.a
        return max(self.retained - self.a, self.b - self.retained)

    def estimate(self) -> Optional[ExactNumber]:
        if self.retained is not None:
            return self.retained
        if self.history:
            best = max(self.history, key=lambda pv: pv[1])
            return best[0]
        return None


def start_search(policy: PolicySpec, interval=(0, 1)) -> SearchState:
    """Fresh state with the first step's test points pending."""
    validate_policy(policy)
    a, b = exact_number(interval[0]), exact_number(interval[1])
    if not a < b:
        raise ValueError("interval must have positive length")
    state = SearchState(policy, a, b, None, None, 1, 0, (), (), "running")
    return suggest(state)


def suggest(state: SearchState) -> SearchState:
    """Fill ``pending`` with the next step's points (finishes when there are none)."""
    if state.status == "finished" or state.pending:
        return state
    points = next_tests(state, state.policy)
    if not points:
        return replace(state, status="finished")
    return replace(state, pending=tuple(points))


def _match_values(
    pending: tuple[ExactNumber, ...], new_values: Sequence[tuple]
) -> list[tuple[ExactNumber, float]]:
    """Pair submitted (point, value) entries with the pending exact points.

    Points may be given as the exact pending objects or as floats; floats are
    matched with a relative tolerance so that values pasted from the display
    round-trip.  Every pending point must be covered exactly once.
    """
    if len(new_values) != len(pending):
        raise SubmissionError(
            f"expected values for {len(pending)} pending points, got {len(new_values)}"
        )
    remaining = list(pending)
    matched: list[tuple[ExactNumber, float]] = []
    for point, value in new_values:
        value = float(value)
        if not math.isfinite(value):
            raise SubmissionError(f"non-finite value at point {point}")
        hit = None
        for idx, p in enumerate(remaining):
            if isinstance(point, (int, Fraction, QuadNum)) and p == point:
                hit = idx
                break
            pf = float(p)
            tol = POINT_MATCH_RTOL * max(1.0, abs(pf))
            if abs(float(point) - pf) <= tol:
                hit = idx
                break
        if hit is None:
            raise SubmissionError(f"point {point} is not pending")
        matched.append((remaining.pop(hit), value))
    return matched


def eliminate(state: SearchState, new_values: Sequence[tuple]) -> SearchState:
    """Consume values for the pending points and shrink the interval.

    Finished states pass through untouched (so the operation is idempotent
    once a search ends).  Otherwise the argmax among the interior tested
    points (retained point plus the new ones) keeps only its two adjacent
    gaps; an exact argmax tie applies the fresh-interval reset rule.
    """
    if state.status == "finished":
        if new_values:
            raise SubmissionError("search already finished")
        return state
    if not state.pending:
        raise SubmissionError("no pending test points; call suggest first")
    matched = _match_values(state.pending, new_values)

    candidates = list(matched)
    if state.retained is not None:
        assert state.retained_value is not None
        candidates.append((state.retained, state.retained_value))
    candidates.sort(key=lambda pv: pv[0])
    points = tuple(p for p, _ in candidates)
    values = [v for _, v in candidates]
    top = max(values)
    tied = [j for j, v in enumerate(values) if v == top]

    steps_advance = len(matched) if _counts_tests(state.policy) else 1
    history = state.history + tuple(matched)

    if len(tied) == 1:
        j = tied[0]
        a2, b2, c2 = eliminate_cells(state.a, state.b, points, j)
        new_state = replace(
            state,
            a=a2,
            b=b2,
            retained=c2,
            retained_value=values[j],
            step_local=state.step_local + 1,
            steps_done=state.steps_done + steps_advance,
            pending=(),
            history=history,
        )
    else:
        # exact tie: no interior tested point survives; restart on the gap
        a2, b2 = points[tied[0]], points[tied[-1]]
        new_state = replace(
            state,
            a=a2,
            b=b2,
            retained=None,
            retained_value=None,
            step_local=1,
            steps_done=state.steps_done + steps_advance,
            pending=(),
            history=history,
        )
    if policy_finished(new_state.policy, new_state.steps_done):
        new_state = replace(new_state, status="finished")
    return new_state


def _counts_tests(policy: PolicySpec) -> bool:
    from .policies import Fibonacci, Golden

    return isinstance(policy, (Fibonacci, Golden))


def what_if(state: SearchState, cell: int) -> tuple[ExactNumber, ExactNumber, ExactNumber]:
    """Interval (and retained point) the current step would leave if candidate
    ``cell`` (0-based, ascending over retained plus pending points) won.
    Pure preview: the state is not touched."""
    if not state.pending:
        raise ValueError("no pending step to preview")
    cands = tuple(sorted(state.pending + ((state.retained,) if state.retained is not None else ())))
    if not 0 <= cell < len(cands):
        raise ValueError(f"cell must be in [0, {len(cands) - 1}]")
    a2, b2, c2 = eliminate_cells(state.a, state.b, cands, cell)
    return a2, b2, c2


@dataclass(frozen=True)
class SearchResult:
    state: SearchState
    estimate: Optional[ExactNumber]
    bound: ExactNumber
    trajectory: tuple[tuple[ExactNumber, ExactNumber, Optional[ExactNumber]], ...]

    @property
    def interval(self) -> tuple[ExactNumber, ExactNumber]:
        return self.state.interval

    @property
    def history(self) -> tuple[tuple[ExactNumber, float], ...]:
        return self.state.history


def run_search(
    f: Callable[[float], float],
    policy: PolicySpec,
    *,
    steps: Optional[int] = None,
    tolerance: Optional[float] = None,
    interval=(0, 1),
) -> SearchResult:
    """Drive a policy against a callable until a step or tolerance stop.

    ``steps`` counts tests for the classical one-test policies and block
    steps otherwise; ``tolerance`` stops once the guaranteed error bound
    drops to or below it.  The returned trajectory records
    (a, b, retained) after every elimination round.
    """
    if steps is None and tolerance is None:
        raise ValueError("need a stop rule: steps or tolerance")
    if steps is not None and steps < 1:
        raise ValueError("steps must be >= 1")
    if tolerance is not None:
        tolerance = Q(tolerance)  # exact comparison against the exact bound
    state = start_search(policy, interval)
    trajectory: list[tuple[ExactNumber, ExactNumber, Optional[ExactNumber]]] = []
    while state.status == "running":
        if steps is not None and state.steps_done >= steps:
            break
        if tolerance is not None and state.bound() <= tolerance:
            break
        state = suggest(state)
        if state.status == "finished" or not state.pending:
            break
        if (
            steps is not None
            and _counts_tests(state.policy)
            and len(state.pending) > steps - state.steps_done
        ):
            # opening symmetric pair with budget for one test: take the
            # defining first point only (its partner would exceed the budget)
            state = replace(state, pending=state.pending[-1:])
        values = []
        for p in state.pending:
            x = float(p)
            try:
                y = float(f(x))
            except Exception as exc:
                raise RuntimeError(f"objective evaluation failed at x={x}") from exc
            if not math.isfinite(y):
                raise RuntimeError(f"objective returned a non-finite value at x={x}")
            values.append((p, y))
        state = eliminate(state, values)
        trajectory.append((state.a, state.b, state.retained))
    return SearchResult(state, state.estimate(), state.bound(), tuple(trajectory))
