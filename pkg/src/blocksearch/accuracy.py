"""Exact step/general accuracy analysis for block-search policies.

Conventions used throughout (all exact arithmetic):

* A normalized state after m steps is written [0, delta_m, Delta_m]: the
  remaining interval has length Delta_m and the retained test point sits at
  distance delta_m >= Delta_m/2 from the far end.  delta_m is the step-m
  accuracy: the worst-case distance from the best tested point to the true
  maximizer.
* At the next 2i-1-test step the retained point must occupy one of the
  dividing points i+1 .. 2i of the new alternating partition (its
  "position"); the position and the partition parameters determine each
  other through a 2x2 integer system, which is what :func:`step_update`
  solves.
* The general accuracy of a policy is the supremum of weighted step
  accuracies, the weight being the accuracy of the optimal fixed-horizon
  policy at the same step (F-sequence weights for odd-block counts,
  E-sequence weights for even ones).

The validity conditions of the analysis are open parameter intervals.  Whenever an
input lands exactly on an interval endpoint (a partition gap degenerates or
a branch condition holds with equality) the functions here raise
:class:`BoundaryError` rather than silently picking a side.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence, Union

from .exactnum import Q, QuadNum, omega
from .policies import (
    Basic,
    EvenBlock,
    Fibonacci,
    Golden,
    InfeasiblePartitionError,
    OddBlockG,
    OddBlockH,
    OddBlockW,
    PolicySpec,
    TwoTestSpecial,
    chi,
    h_first_alpha,
    validate_policy,
    xy_backward,
)
from .reporting import Report
from .sequences import e_seq, f_seq, g_extended, g_seq

ExactNumber = Union[int, Fraction, QuadNum]


class BoundaryError(ValueError):
    """An input sits exactly on an endpoint of one of the analysis' open intervals."""


class PreconditionError(ValueError):
    pass


class InfeasiblePositionError(ValueError):
    pass


# ---------------------------------------------------------------------------
# Position geometry for one 2i-1-test step


@dataclass(frozen=True)
class StepUpdate:
    alpha: ExactNumber
    Delta: ExactNumber
    delta: ExactNumber
    position: int


def _solve_position(delta_prev, Delta_prev, position: int, i: int):
    """Invert the dividing-point system for a retained point at ``position``.

    Returns (alpha, Delta_next, beta).  The forward system is
    delta_prev = chi(l-1)*alpha + floor(l/2)*Delta_next and
    Delta_prev = alpha + i*Delta_next.
    """
    l = position
    det = i * chi(l - 1) - l // 2
    alpha = (i * delta_prev - (l // 2) * Delta_prev) / det
    Delta_next = (chi(l - 1) * Delta_prev - delta_prev) / det
    return alpha, Delta_next, Delta_next - alpha


def _check_interior(delta_prev, Delta_prev) -> None:
    if not (2 * delta_prev > Delta_prev and delta_prev < Delta_prev):
        raise PreconditionError(
            "retained accuracy must satisfy Delta/2 < delta < Delta"
        )


def locate_position(delta_prev, Delta_prev, i: int) -> set[int]:
    """Feasible positions for the retained point in the next step's partition.

    A position l in {i+1, ..., 2i} is feasible when the solved partition has
    both gaps strictly positive.  The feasibility cells are the open
    intervals between consecutive breakpoints j*Delta/(i+1) and j*Delta/i;
    landing exactly on a breakpoint degenerates a gap and raises
    :class:`BoundaryError`.
    """
    if i < 2:
        raise ValueError("block order must be >= 2")
    _check_interior(delta_prev, Delta_prev)
    feasible: set[int] = set()
    boundaries: list[str] = []
    for l in range(i + 1, 2 * i + 1):
        alpha, Delta_next, beta = _solve_position(delta_prev, Delta_prev, l, i)
        if beta == 0:
            j = (l + 1) // 2
            boundaries.append(f"K({j}) = {j}*Delta/{i + 1}")
        elif alpha == 0:
            j = l // 2
            boundaries.append(f"{j}*Delta/{i}")
        elif alpha > 0 and beta > 0:
            feasible.add(l)
    if boundaries:
        raise BoundaryError(
            f"delta_prev = {delta_prev} sits on breakpoint(s) {', '.join(sorted(set(boundaries)))}"
        )
    return feasible


def step_update(delta_prev, Delta_prev, position: int, i: int) -> StepUpdate:
    """One step of the accuracy recursion for a retained point at ``position``.

    The next accuracy is the longer of the two new gaps: alpha when the
    branch inequality delta_prev <> l*Delta_prev/(2i+1) holds in the
    direction fixed by the position's parity, Delta_next - alpha otherwise;
    equality is a boundary.
    """
    if i < 2:
        raise ValueError("block order must be >= 2")
    _check_interior(delta_prev, Delta_prev)
    if not (i + 1 <= position <= 2 * i):
        raise InfeasiblePositionError(
            f"position must lie in [{i + 1}, {2 * i}], got {position}"
        )
    alpha, Delta_next, beta = _solve_position(delta_prev, Delta_prev, position, i)
    if alpha == 0 or beta == 0:
        raise BoundaryError(
            f"position {position} degenerates a gap at delta_prev = {delta_prev}"
        )
    if alpha < 0 or beta < 0:
        raise InfeasiblePositionError(
            f"no alternating partition puts the retained point at position {position}"
        )
    pivot = position * Delta_prev / (2 * i + 1)
    if delta_prev == pivot:
        raise BoundaryError(
            f"branch condition holds with equality at delta_prev = {position}*Delta/{2 * i + 1}"
        )
    alpha_is_long = delta_prev < pivot if position % 2 == 0 else delta_prev > pivot
    delta_next = alpha if alpha_is_long else Delta_next - alpha
    return StepUpdate(alpha, Delta_next, delta_next, position)


# ---------------------------------------------------------------------------
# Accuracy traces of the normalized one-parameter family


@dataclass(frozen=True)
class StepRecord:
    m: int
    position: Optional[int]
    alpha: ExactNumber
    Delta: ExactNumber
    delta: ExactNumber


@dataclass(frozen=True)
class AccuracyTrace:
    """Per-step exact accuracy records of a normalized basic policy.

    Step 0 is the initial state [0, 1/i]: delta_0 = Delta_0 = 1/i (no
    interior point yet).  Step 1 tests 2i points, later steps 2i-1.
    """

    i: int
    alpha1: ExactNumber
    records: tuple[StepRecord, ...]

    def delta(self, m: int) -> ExactNumber:
        if m == 0:
            return Q(1, self.i)
        return self.records[m - 1].delta

    def Delta(self, m: int) -> ExactNumber:
        if m == 0:
            return Q(1, self.i)
        return self.records[m - 1].Delta

    @property
    def steps(self) -> int:
        return len(self.records)


def trace_basic(
    alpha1: ExactNumber,
    i: int,
    steps: int,
    positions: Optional[Sequence[int]] = None,
) -> AccuracyTrace:
    """Chain the accuracy recursion for the normalized policy with first gap alpha1.

    ``positions`` optionally fixes the retained-point position at steps
    2..steps (one entry per step); by default every step takes the feasible
    position maximizing the step accuracy (which is unique off boundaries).
    """
    if i < 2:
        raise ValueError("block order must be >= 2")
    if steps < 1:
        raise ValueError("steps must be >= 1")
    one_over_i = Q(1, i)
    if not (0 < alpha1 and alpha1 < one_over_i):
        raise PreconditionError("alpha1 must lie strictly between 0 and 1/i")
    F = f_seq(i, 3)
    G = g_seq(i, 2)
    if alpha1 == Q(G[0], G[2]):
        raise BoundaryError("alpha1 equals G_0/G_2: the first partition degenerates")
    if alpha1 > Q(G[0], G[2]):
        raise InfeasiblePartitionError(
            "alpha1 exceeds G_0/G_2: no first-step partition exists"
        )
    if alpha1 == Q(F[1], F[3]):
        raise BoundaryError("alpha1 equals F_1/F_3: the two first gaps tie")
    if positions is not None and len(positions) != max(steps - 1, 0):
        raise ValueError("positions must supply one entry per step from step 2 on")

    beta1 = (one_over_i - (i + 1) * alpha1) / i
    Delta1 = alpha1 + beta1
    delta1 = alpha1 if alpha1 > beta1 else beta1
    records = [StepRecord(1, None, alpha1, Delta1, delta1)]
    delta_prev, Delta_prev = delta1, Delta1
    for m in range(2, steps + 1):
        if positions is not None:
            upd = step_update(delta_prev, Delta_prev, positions[m - 2], i)
        else:
            candidates = locate_position(delta_prev, Delta_prev, i)
            upd = None
            for l in sorted(candidates):
                trial = step_update(delta_prev, Delta_prev, l, i)
                if upd is None or trial.delta > upd.delta:
                    upd = trial
            if upd is None:
                raise InfeasiblePositionError("no feasible position; state is degenerate")
        records.append(StepRecord(m, upd.position, upd.alpha, upd.Delta, upd.delta))
        delta_prev, Delta_prev = upd.delta, upd.Delta
    return AccuracyTrace(i, alpha1, tuple(records))


def closed_form_delta(i: int, alpha1: ExactNumber, m: int) -> ExactNumber:
    """delta_m = (-1)^m (G_{m-2} - G_m alpha1) / i^m (valid on the eligible alpha1 ranges)."""
    if m < 0:
        raise ValueError("m must be >= 0")
    sign = (-1) ** m
    return sign * (g_extended(i, m - 2) - g_extended(i, m) * alpha1) / i**m


def closed_form_Delta(i: int, alpha1: ExactNumber, m: int) -> ExactNumber:
    """Delta_m = delta_{m-1} / i, extended to m = 1 via the G_{-2} = 1/i convention."""
    if m < 1:
        raise ValueError("m must be >= 1")
    return closed_form_delta(i, alpha1, m - 1) / i


# ---------------------------------------------------------------------------
# Step accuracies of the named policies


def _g_plan_trace(i: int, horizon: int, steps: int) -> list[tuple[ExactNumber, ExactNumber]]:
    """(delta_s, Delta_s) for the fixed-horizon odd-block policy on [0, 1]."""
    plan = xy_backward([2 * i - 1] * horizon)
    out: list[tuple[ExactNumber, ExactNumber]] = []
    Delta_prev: ExactNumber = Q(1)
    for s in range(1, steps + 1):
        x, y = plan.x(s), plan.y(s)
        if s == 1:
            alpha = Delta_prev * Q(x, i * y)
            beta = Delta_prev / i - alpha
        else:
            alpha = Delta_prev * Q(x, x + i * y)
            beta = Delta_prev * Q(y - x, x + i * y)
        Delta = alpha + beta
        delta = alpha if alpha >= beta else beta
        out.append((delta, Delta))
        Delta_prev = Delta
    return out


def step_accuracy(policy: PolicySpec, n: int) -> ExactNumber:
    """Exact worst-case accuracy delta(P, n) after n steps on the unit interval.

    Steps count tests for the classical one-test policies and block steps
    otherwise.  ``Basic`` policies are measured in their normalized setting
    (initial interval [0, 1/i]).
    """
    validate_policy(policy)
    if n < 1:
        raise ValueError("n must be >= 1")
    if isinstance(policy, Fibonacci):
        if n > policy.horizon:
            raise ValueError("n exceeds the policy horizon")
        F = f_seq(1, policy.horizon + 1)
        return Q(F[policy.horizon - n + 1], F[policy.horizon + 1])
    if isinstance(policy, Golden):
        return omega(1) ** n
    if isinstance(policy, OddBlockW):
        return omega(policy.i) ** n
    if isinstance(policy, OddBlockH):
        if n == 1:
            a1 = h_first_alpha(policy.i)
            b1 = Q(1, policy.i) - a1
            return a1 if a1 > b1 else b1
        return omega(policy.i) ** n
    if isinstance(policy, OddBlockG):
        if n > policy.horizon:
            raise ValueError("n exceeds the policy horizon")
        return _g_plan_trace(policy.i, policy.horizon, n)[-1][0]
    if isinstance(policy, EvenBlock):
        i = policy.i
        return Q(1, (2 * i + 1) * (i + 1) ** (n - 1))
    if isinstance(policy, TwoTestSpecial):
        if n == 1:
            return Q(3, 7)
        return Q(1, 7 * 2 ** (n - 2))
    if isinstance(policy, Basic):
        return trace_basic(policy.alpha1, policy.i, n).delta(n)
    raise TypeError(f"not a policy: {policy!r}")


# ---------------------------------------------------------------------------
# General accuracy (weighted supremum over steps)


def omega_limit(i: int) -> QuadNum:
    """lim F_{n+1} w^n = 1/2 + (3/2) sqrt(i/(i+4))."""
    if i < 1:
        raise ValueError("block order must be >= 1")
    return QuadNum(Q(1, 2), Q(3, 2 * (i + 4)), i * (i + 4))


def delta_w(i: int) -> QuadNum:
    """General accuracy of the stationary odd-block policy: F_2 w = 2 i w."""
    return 2 * i * omega(i)


def delta_h(i: int) -> QuadNum:
    """General accuracy of the H policy: F_4 w^3 = i^2 (2i+3) w^3."""
    return i * i * (2 * i + 3) * omega(i) ** 3


@dataclass(frozen=True)
class GeneralAccuracy:
    policy: PolicySpec
    weights: str  # "F" or "E"
    sup_value: ExactNumber
    attained_at: Optional[int]  # None when the sup is a limit, not attained
    converged: bool
    limit: ExactNumber
    products: tuple[tuple[int, ExactNumber], ...]


def _weighted_products(policy: PolicySpec, horizon: int) -> tuple[str, list[tuple[int, ExactNumber]]]:
    if isinstance(policy, (EvenBlock, TwoTestSpecial)):
        i = policy.i if isinstance(policy, EvenBlock) else 1
        E = e_seq(i, horizon)
        return "E", [(n, E[n] * step_accuracy(policy, n)) for n in range(1, horizon + 1)]
    if isinstance(policy, Basic):
        F = f_seq(policy.i, horizon + 2)
        return "F", [(n, F[n + 2] * step_accuracy(policy, n)) for n in range(1, horizon + 1)]
    i = 1 if isinstance(policy, (Fibonacci, Golden)) else policy.i
    F = f_seq(i, horizon + 1)
    if isinstance(policy, (Fibonacci, OddBlockG)):
        horizon = min(horizon, policy.horizon)
    return "F", [(n, F[n + 1] * step_accuracy(policy, n)) for n in range(1, horizon + 1)]


def general_accuracy(policy: PolicySpec, horizon: int) -> GeneralAccuracy:
    """Weighted supremum of step accuracies up to ``horizon``.

    ``converged`` is True only when the tail beyond the horizon is rigorously
    bracketed below the reported supremum: policies whose tail accuracy is
    c*w^n inherit the two-branch monotone structure of the weighted products
    (one branch decreases to the limit from its first element, the other
    increases to it), and the equal-partition policies have an explicit
    closed-form bound.  Fixed-horizon policies and generic ``Basic`` traces
    report the finite-horizon supremum with ``converged=False``.
    """
    validate_policy(policy)
    if horizon < 4:
        raise ValueError("horizon must be >= 4")
    weights, products = _weighted_products(policy, horizon)
    sup_value = None
    attained_at: Optional[int] = None
    for n, p in products:
        if sup_value is None or p > sup_value:
            sup_value, attained_at = p, n

    if isinstance(policy, EvenBlock):
        i = policy.i
        # E_n delta_n = (i+1)(2(i+1)^n - 1)/((2i+1)(i+1)^n) increases to the limit
        limit = Q(2 * (i + 1), 2 * i + 1)
        return GeneralAccuracy(policy, weights, limit, None, True, limit, tuple(products))
    if isinstance(policy, TwoTestSpecial):
        # E_n delta_n = (2^{n+1} - 1) 2^{2-n}/7 increases to 8/7 past the head
        limit = Q(8, 7)
        converged = sup_value >= limit
        return GeneralAccuracy(policy, weights, sup_value, attained_at, converged, limit, tuple(products))

    i = 1 if isinstance(policy, (Fibonacci, Golden)) else policy.i
    limit = omega_limit(i)
    if isinstance(policy, (Fibonacci, OddBlockG)):
        return GeneralAccuracy(policy, weights, sup_value, attained_at, False, limit, tuple(products))

    if isinstance(policy, (Golden, OddBlockW, OddBlockH)) or (
        isinstance(policy, Basic) and policy.alpha1 == omega(policy.i) ** 2
    ):
        tail_start = 2 if isinstance(policy, OddBlockH) else 1
        converged = sup_value >= limit and _two_branch_bracket(products, tail_start, limit)
        return GeneralAccuracy(policy, weights, sup_value, attained_at, converged, limit, tuple(products))

    return GeneralAccuracy(policy, weights, sup_value, attained_at, False, limit, tuple(products))


def _two_branch_bracket(products, tail_start: int, limit) -> bool:
    """Tail products split into a branch decreasing to the limit from above and
    one increasing to it from below; with that structure the supremum past the
    horizon cannot exceed the maximum already seen."""
    above = [p for n, p in products if n >= tail_start and p > limit]
    below = [p for n, p in products if n >= tail_start and p < limit]
    if any(p == limit for n, p in products if n >= tail_start):
        return False
    dec = all(x > y for x, y in zip(above, above[1:]))
    inc = all(x < y for x, y in zip(below, below[1:]))
    return dec and inc


def limit_bracket_report(i: int, n_max: int) -> Report:
    """Exact check that F_{n+1} w^n brackets its limit monotonically by parity."""
    if i < 1:
        raise ValueError("block order must be >= 1")
    if n_max < 4:
        raise ValueError("n_max must be >= 4")
    w = omega(i)
    F = f_seq(i, n_max + 3)
    L = omega_limit(i)
    products = {n: F[n + 1] * w**n for n in range(0, n_max + 3)}
    report = Report(f"weighted-product bracket (i={i}, n<={n_max})")
    for n in range(0, n_max + 1):
        if n % 2 == 0:
            report.add(
                "even-products-increase-below-limit",
                {"i": i, "n": n},
                products[n] < products[n + 2] and products[n] < L,
            )
        else:
            report.add(
                "odd-products-decrease-above-limit",
                {"i": i, "n": n},
                products[n] > products[n + 2] and products[n] > L,
            )
    return report


# ---------------------------------------------------------------------------
# Threshold constants


@dataclass(frozen=True)
class Thresholds:
    """Exact dismissal thresholds for the first-gap parameter alpha1.

    ``A[m]`` compares weighted step accuracies against delta_star: with the
    closed-form delta_m, F_{m+2} delta_m < delta_star iff alpha1 < A[m] for
    odd m (resp. > for even m).  ``B[m]`` is the tail-bound analogue through
    gamma: the general accuracy can fall below delta_star only if
    (-1)^m alpha1 < B[m].
    """

    i: int
    A: dict[int, ExactNumber]
    B: dict[int, ExactNumber]
    gamma: QuadNum
    delta_star: QuadNum
    limit_F: QuadNum


def thresholds(i: int, m_max: int) -> Thresholds:
    if i < 2:
        raise ValueError("block order must be >= 2")
    if m_max < 2:
        raise ValueError("m_max must be >= 2")
    w = omega(i)
    delta_star = delta_h(i)
    limit_F = omega_limit(i)
    gamma = delta_star / limit_F
    F = f_seq(i, m_max + 2)
    A: dict[int, ExactNumber] = {}
    B: dict[int, ExactNumber] = {}
    for m in range(1, m_max + 1):
        sign = (-1) ** (m - 1)
        A[m] = (g_extended(i, m - 2) + sign * i**m * delta_star / F[m + 2]) / g_extended(i, m)
        B[m] = (i**m * w ** (m + 1) * gamma + (-1) ** m * g_extended(i, m - 3)) / g_extended(
            i, m - 1
        )
    return Thresholds(i, A, B, gamma, delta_star, limit_F)


# ---------------------------------------------------------------------------
# Inequality suite


def verify_inequalities(i_values: Iterable[int]) -> Report:
    """Decide every tail-bound inequality exactly for each block order given."""
    report = Report("inequality suite")
    for i in i_values:
        if i < 2:
            raise ValueError("inequality suite requires block orders >= 2")
        w = omega(i)
        F = f_seq(i, 7)
        G = g_seq(i, 4)
        ds = delta_h(i)
        L = omega_limit(i)
        gamma = ds / L

        report.add("3.4-delta-below-2", {"i": i}, ds < 2)
        report.add(
            "3.5-first-step-below-delta",
            {"i": i},
            2 * i * (Q((i + 1) // 2, i) + chi(i) * w) < i * (2 * i + 3) * (1 - i * w),
        )
        report.add("3.6-W-above-H", {"i": i}, delta_w(i) > ds)
        report.add("5.8-gamma-omega-gap", {"i": i}, Q(1, i) - gamma * w > Q(G[1], G[3]))
        report.add("5.10-inverse-gamma-gap", {"i": i}, Q(1, i) - w / gamma < Q(F[2], F[4]))
        report.add("5.13-delta-vs-F2F5overF6", {"i": i}, ds < Q(F[2] * F[5], F[6]))
        report.add("5.14-omega3G4", {"i": i}, w**3 * G[4] < (i + 1) / gamma)
        f6f7 = Q((i + 1) * F[6], F[7])
        report.add(
            "5.16-ratio-chain",
            {"i": i},
            (i + 1) * w < f6f7
            and f6f7 == 1 + Q(2 * i + 3, 2 * i**3 + 9 * i**2 + 9 * i + 1)
            and f6f7 < 1 + Q(1, i * (i + 3)),
        )
        report.add("5.18-gamma-upper", {"i": i}, gamma < Q(i + 1, i + 2) * (1 + w))
        report.add("gamma-above-1", {"i": i}, gamma > 1)
    return report


# ---------------------------------------------------------------------------
# Sub-interval classification of alpha1


@dataclass(frozen=True)
class SubInterval:
    """Which open sub-interval of (0, 1/i) contains alpha1, and why it is dismissed.

    ``dismissal`` is one of: "B-thresholds" (tail bound through gamma),
    "A-thresholds" (weighted step-2 accuracy already at delta_star),
    "case-analysis-5.11" / "case-analysis-5.12" (the two families needing
    the full threshold comparison), "rejected-no-partition" (no first-step
    partition exists), or "h-point" (alpha1 = w^2 exactly).
    ``closed_form_m_max`` is how far the explicit trace formulas are valid.
    """

    name: str
    n: Optional[int]
    lower: ExactNumber
    upper: ExactNumber
    dismissal: str
    closed_form_m_max: int


def subinterval_classify(alpha1: ExactNumber, i: int) -> SubInterval:
    if i < 2:
        raise ValueError("block order must be >= 2")
    if not (0 < alpha1 and alpha1 < Q(1, i)):
        raise PreconditionError("alpha1 must lie strictly between 0 and 1/i")
    w2 = omega(i) ** 2
    if alpha1 == w2:
        return SubInterval("h-point", None, w2, w2, "h-point", 0)

    cap = 24
    F = f_seq(i, cap)
    G = g_seq(i, cap)

    def grow(n: int) -> None:
        nonlocal cap, F, G
        while 2 * n + 4 > cap:
            cap *= 2
            F = f_seq(i, cap)
            G = g_seq(i, cap)

    def fr(table, p, q):
        return Q(table[p], table[q])

    def boundary(value, name):
        if alpha1 == value:
            raise BoundaryError(f"alpha1 equals the sub-interval endpoint {name}")

    if alpha1 < w2:
        boundary(fr(F, 1, 3), "F_1/F_3")
        if alpha1 < fr(F, 1, 3):
            return SubInterval("below-first-threshold", None, Q(0), fr(F, 1, 3), "B-thresholds", 0)
        n = 1
        while True:
            grow(n)
            lo_f, hi_g = fr(F, 2 * n - 1, 2 * n + 1), fr(G, 2 * n - 1, 2 * n + 1)
            boundary(hi_g, f"G_{2 * n - 1}/G_{2 * n + 1}")
            if alpha1 < hi_g:
                dismissal = "B-thresholds" if n == 1 else "A-thresholds"
                return SubInterval("odd-FG", n, lo_f, hi_g, dismissal, 2 * n - 1)
            hi_f = fr(F, 2 * n + 1, 2 * n + 3)
            boundary(hi_f, f"F_{2 * n + 1}/F_{2 * n + 3}")
            if alpha1 < hi_f:
                return SubInterval("odd-GF", n, hi_g, hi_f, "A-thresholds", 2 * n)
            n += 1

    boundary(fr(G, 0, 2), "G_0/G_2")
    if alpha1 > fr(G, 0, 2):
        return SubInterval("top", None, fr(G, 0, 2), Q(1, i), "rejected-no-partition", 0)
    n = 1
    while True:
        grow(n)
        lo_f, hi_g = fr(F, 2 * n, 2 * n + 2), fr(G, 2 * n - 2, 2 * n)
        boundary(lo_f, f"F_{2 * n}/F_{2 * n + 2}")
        if alpha1 > lo_f:
            dismissal = "B-thresholds" if n == 1 else "case-analysis-5.12"
            return SubInterval("even-FG", n, lo_f, hi_g, dismissal, 2 * n - 1)
        lo_g = fr(G, 2 * n, 2 * n + 2)
        boundary(lo_g, f"G_{2 * n}/G_{2 * n + 2}")
        if alpha1 > lo_g:
            return SubInterval("even-GF", n, lo_g, lo_f, "case-analysis-5.11", 2 * n)
        n += 1
