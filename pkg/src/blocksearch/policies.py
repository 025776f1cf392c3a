"""Search policies as reproducible test-point generators.

Each policy places its tests at the dividing points of an alternating
[alpha, beta]-partition of the current interval (gaps alternate
alpha, beta, alpha, ... starting with alpha).  The named policies:

* ``Fibonacci(horizon)`` / ``Golden`` - classical one-test-per-step search
  driven by the symmetry rule (each new test mirrors the retained point
  about the interval midpoint).
* ``OddBlockG(i, horizon)`` - fixed-horizon block search testing 2i-1 points
  per step, partition ratios taken from the backward test-count recursion.
* ``OddBlockW(i)`` / ``OddBlockH(i)`` - open-ended 2i-1 block searches whose
  step-m gap lengths are powers of the ratio limit w(i); H differs from W
  only in the first step.
* ``EvenBlock(i)`` - 2i tests per step on an equal partition.
* ``TwoTestSpecial`` - two tests per step, first step at 3/7 and 4/7, then
  equal partitions.
* ``Basic(i, alpha1)`` - the normalized one-parameter family used by the
  accuracy analysis: first step tests 2i points on an interval playing the
  role of [0, 1/i] with first gap alpha1 (in [0,1/i] units), later steps
  test 2i-1 points with the partition forced by the retained point.

All geometry is exact; nothing here ever touches floating point.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Union

from .exactnum import Q, QuadNum, as_exact, format_exact, omega

ExactNumber = Union[int, Fraction, QuadNum]


def exact_number(x: ExactNumber) -> Union[Fraction, QuadNum]:
    """Coerce ints to Fraction so division stays exact down the line."""
    if isinstance(x, int):
        return Q(x)
    if isinstance(x, (Fraction, QuadNum)):
        return x
    raise TypeError(f"expected an exact number, got {type(x).__name__}")


class InfeasiblePartitionError(ValueError):
    """The requested gap lengths do not tile the interval exactly."""


class PolicyStateMismatchError(ValueError):
    """The retained point does not sit on any dividing point of the step partition."""


def chi(k: int) -> int:
    """0 for odd k, 1 for even k."""
    return 1 - (k & 1)


@dataclass(frozen=True)
class CMatrix:
    """The 2x2 integer step matrix of the backward test-count recursion."""

    k: int
    rows: tuple[tuple[int, int], tuple[int, int]]

    def det(self) -> int:
        (a, b), (c, d) = self.rows
        return a * d - b * c

    def apply(self, vec: tuple[int, int]) -> tuple[int, int]:
        (a, b), (c, d) = self.rows
        x, y = vec
        return (a * x + b * y, c * x + d * y)


def c_matrix(k: int) -> CMatrix:
    if k < 1:
        raise ValueError("k must be >= 1")
    return CMatrix(k, ((chi(k), (k + 1) // 2), (chi(k + 1), (k + 2) // 2)))


@dataclass(frozen=True)
class XYPlan:
    """Backward solution (X_m, Y_m) with boundary (X_n, Y_n) = (1, 2)."""

    k_schedule: tuple[int, ...]
    pairs: tuple[tuple[int, int], ...]  # index m = 0..n

    @property
    def horizon(self) -> int:
        return len(self.k_schedule)

    def x(self, m: int) -> int:
        return self.pairs[m][0]

    def y(self, m: int) -> int:
        return self.pairs[m][1]


def xy_backward(k_schedule: Sequence[int]) -> XYPlan:
    """Run (X_m, Y_m) = c(k_{m+1}) (X_{m+1}, Y_{m+1}) down from (X_n, Y_n) = (1, 2)."""
    ks = tuple(int(k) for k in k_schedule)
    if not ks:
        raise ValueError("schedule must be nonempty")
    if ks[0] < 2:
        raise ValueError("first test count must be >= 2")
    if any(k < 1 for k in ks):
        raise ValueError("test counts must be positive")
    n = len(ks)
    pairs: list[tuple[int, int]] = [(1, 2)]
    for m in range(n - 1, -1, -1):
        pairs.append(c_matrix(ks[m]).apply(pairs[-1]))
    pairs.reverse()
    plan = XYPlan(ks, tuple(pairs))
    for x, y in plan.pairs:
        if not 0 < x < y:
            raise AssertionError("test-count recursion left its invariant range")
    return plan


# ---------------------------------------------------------------------------
# Policy specifications


@dataclass(frozen=True)
class Fibonacci:
    horizon: int  # total number of tests, fixed in advance


@dataclass(frozen=True)
class Golden:
    pass


@dataclass(frozen=True)
class EvenBlock:
    i: int


@dataclass(frozen=True)
class OddBlockG:
    i: int
    horizon: int  # number of block steps, fixed in advance


@dataclass(frozen=True)
class OddBlockW:
    i: int


@dataclass(frozen=True)
class OddBlockH:
    i: int


@dataclass(frozen=True)
class Basic:
    i: int
    alpha1: ExactNumber

    def __post_init__(self):
        a1 = as_exact(self.alpha1) if isinstance(self.alpha1, (str, float)) else self.alpha1
        object.__setattr__(self, "alpha1", a1)


@dataclass(frozen=True)
class TwoTestSpecial:
    pass


PolicySpec = Union[
    Fibonacci, Golden, EvenBlock, OddBlockG, OddBlockW, OddBlockH, Basic, TwoTestSpecial
]


def validate_policy(policy: PolicySpec) -> None:
    if isinstance(policy, (Fibonacci, OddBlockG)) and policy.horizon < 1:
        raise ValueError("horizon must be >= 1")
    if isinstance(policy, (EvenBlock, OddBlockG, OddBlockW, OddBlockH, Basic)):
        i = policy.i
        if isinstance(policy, EvenBlock):
            if i < 1:
                raise ValueError("even block order must be >= 1")
        elif i < 2:
            raise ValueError("odd block order must be >= 2")
    if isinstance(policy, Basic):
        a1 = policy.alpha1
        if not (0 < a1 and a1 < Q(1, policy.i)):
            raise ValueError("alpha1 must lie strictly between 0 and 1/i")


def block_order(policy: PolicySpec) -> int:
    """The block order i for weighting purposes (classical policies count as i=1)."""
    if isinstance(policy, (Fibonacci, Golden, TwoTestSpecial)):
        return 1
    return policy.i


def policy_to_json(policy: PolicySpec) -> dict:
    if isinstance(policy, Fibonacci):
        return {"type": "fibonacci", "horizon": policy.horizon}
    if isinstance(policy, Golden):
        return {"type": "golden"}
    if isinstance(policy, EvenBlock):
        return {"type": "even_block", "i": policy.i}
    if isinstance(policy, OddBlockG):
        return {"type": "odd_block_g", "i": policy.i, "horizon": policy.horizon}
    if isinstance(policy, OddBlockW):
        return {"type": "odd_block_w", "i": policy.i}
    if isinstance(policy, OddBlockH):
        return {"type": "odd_block_h", "i": policy.i}
    if isinstance(policy, Basic):
        return {"type": "basic", "i": policy.i, "alpha1": format_exact(policy.alpha1)}
    if isinstance(policy, TwoTestSpecial):
        return {"type": "two_test_special"}
    raise TypeError(f"not a policy: {policy!r}")


def policy_from_json(data: dict) -> PolicySpec:
    try:
        kind = data["type"]
    except (TypeError, KeyError):
        raise ValueError("policy JSON must be an object with a 'type' field")
    try:
        if kind == "fibonacci":
            policy: PolicySpec = Fibonacci(int(data["horizon"]))
        elif kind == "golden":
            policy = Golden()
        elif kind == "even_block":
            policy = EvenBlock(int(data["i"]))
        elif kind == "odd_block_g":
            policy = OddBlockG(int(data["i"]), int(data["horizon"]))
        elif kind == "odd_block_w":
            policy = OddBlockW(int(data["i"]))
        elif kind == "odd_block_h":
            policy = OddBlockH(int(data["i"]))
        elif kind == "basic":
            policy = Basic(int(data["i"]), as_exact(data["alpha1"]))
        elif kind == "two_test_special":
            policy = TwoTestSpecial()
        else:
            raise ValueError(f"unknown policy type {kind!r}")
    except KeyError as exc:
        raise ValueError(f"policy JSON missing field {exc}")
    validate_policy(policy)
    return policy


def first_alpha(policy: PolicySpec):
    """First-step partition parameter (unit initial interval).

    For ``TwoTestSpecial`` the defining datum is the test-point pair itself,
    so that policy returns the tuple (3/7, 4/7); everything else returns a
    single exact number.
    """
    validate_policy(policy)
    if isinstance(policy, Fibonacci):
        from .sequences import f_seq

        F = f_seq(1, policy.horizon + 1)
        return Q(F[policy.horizon], F[policy.horizon + 1])
    if isinstance(policy, Golden):
        return omega(1)
    if isinstance(policy, EvenBlock):
        return Q(1, 2 * policy.i + 1)
    if isinstance(policy, OddBlockG):
        plan = xy_backward([2 * policy.i - 1] * policy.horizon)
        return Q(plan.x(1), policy.i * plan.y(1))
    if isinstance(policy, OddBlockW):
        return omega(policy.i)
    if isinstance(policy, OddBlockH):
        return h_first_alpha(policy.i)
    if isinstance(policy, Basic):
        return policy.alpha1
    if isinstance(policy, TwoTestSpecial):
        return (Q(3, 7), Q(4, 7))
    raise TypeError(f"not a policy: {policy!r}")


def h_first_alpha(i: int) -> QuadNum:
    """alpha_1 of the H policy: ((1/i) * floor((i+1)/2) + chi(i) * w) * w."""
    w = omega(i)
    return (Q((i + 1) // 2, i) + chi(i) * w) * w


# ---------------------------------------------------------------------------
# Partition geometry


@dataclass(frozen=True)
class Partition:
    """An alternating [alpha, beta]-partition with its interior dividing points."""

    a: ExactNumber
    b: ExactNumber
    alpha: ExactNumber
    beta: ExactNumber
    points: tuple[ExactNumber, ...]


def partition_points(
    a: ExactNumber, b: ExactNumber, alpha: ExactNumber, beta: ExactNumber, count: int
) -> Partition:
    """Place ``count`` dividing points with gaps alternating alpha, beta, alpha, ...

    The count+1 gaps must tile [a, b] exactly; otherwise the partition does
    not exist and an :class:`InfeasiblePartitionError` is raised.
    """
    if count < 1:
        raise ValueError("count must be >= 1")
    if not (alpha > 0 and beta > 0):
        raise InfeasiblePartitionError("gap lengths must be positive")
    gaps = count + 1
    n_alpha = (gaps + 1) // 2
    n_beta = gaps // 2
    total = n_alpha * alpha + n_beta * beta
    if total != b - a:
        raise InfeasiblePartitionError(
            f"{n_alpha}*alpha + {n_beta}*beta = {total} does not tile the interval of length {b - a}"
        )
    points = []
    x = a
    for j in range(count):
        x = x + (alpha if j % 2 == 0 else beta)
        points.append(x)
    return Partition(a, b, alpha, beta, tuple(points))


@dataclass(frozen=True)
class PlainState:
    """Minimal search-state view consumed by :func:`next_tests`.

    ``step_local`` is the 1-based index of the upcoming step within the
    current context (contexts restart after a tie reset); ``steps_done``
    counts completed steps across the whole run (tests for the classical
    one-test policies, block steps otherwise).
    """

    a: ExactNumber
    b: ExactNumber
    retained: Optional[ExactNumber]
    step_local: int = 1
    steps_done: int = 0


def remaining_horizon(policy: PolicySpec, state) -> Optional[int]:
    """Steps left in the current context for fixed-horizon policies, else None."""
    if isinstance(policy, Fibonacci):
        return policy.horizon - state.steps_done
    if isinstance(policy, OddBlockG):
        # horizon at context start, minus the context steps already taken
        return policy.horizon - (state.steps_done - (state.step_local - 1))
    return None


def policy_finished(policy: PolicySpec, steps_done: int) -> bool:
    if isinstance(policy, (Fibonacci, OddBlockG)):
        return steps_done >= policy.horizon
    return False


def _block_layout(
    policy: PolicySpec, step_local: int, L: ExactNumber, context_horizon: Optional[int]
) -> tuple[ExactNumber, ExactNumber, int]:
    """(alpha, beta, total dividing points) of the step partition, or raise."""
    if isinstance(policy, (OddBlockW, OddBlockH)):
        i = policy.i
        w = omega(i)
        if step_local == 1:
            alpha = (h_first_alpha(i) if isinstance(policy, OddBlockH) else w) * L
            beta = L / i - alpha
            return alpha, beta, 2 * i - 1
        alpha = i * w**2 * L
        beta = i * w**3 * L
        return alpha, beta, 2 * i
    if isinstance(policy, OddBlockG):
        i = policy.i
        if context_horizon is None or context_horizon < step_local:
            raise ValueError("block plan exhausted")
        plan = xy_backward([2 * i - 1] * context_horizon)
        x, y = plan.x(step_local), plan.y(step_local)
        if step_local == 1:
            alpha = L * Q(x, i * y)
            beta = L / i - alpha
            return alpha, beta, 2 * i - 1
        alpha = L * Q(x, x + i * y)
        beta = L * Q(y - x, x + i * y)
        return alpha, beta, 2 * i
    if isinstance(policy, EvenBlock):
        i = policy.i
        if step_local == 1:
            g = L / (2 * i + 1)
            return g, g, 2 * i
        g = L / (2 * i + 2)
        return g, g, 2 * i + 1
    if isinstance(policy, TwoTestSpecial):
        if step_local == 1:
            return 3 * L / 7, L / 7, 2
        g = L / 4
        return g, g, 3
    raise TypeError(f"not a block policy: {policy!r}")


def _basic_layout(
    policy: Basic, a: ExactNumber, b: ExactNumber, retained, step_local: int
) -> tuple[ExactNumber, ExactNumber, int]:
    i = policy.i
    L = b - a
    if step_local == 1:
        alpha = i * policy.alpha1 * L
        beta = (L - (i + 1) * alpha) / i
        if not beta > 0:
            raise InfeasiblePartitionError(
                "alpha1 too large: the first 2i-point partition does not exist"
            )
        return alpha, beta, 2 * i
    if retained is None:
        raise PolicyStateMismatchError("basic policy expects a retained point after step 1")
    from .accuracy import locate_position, step_update

    delta_prev = max(retained - a, b - retained)
    positions = locate_position(delta_prev, L, i)
    best = None
    for pos in sorted(positions):
        upd = step_update(delta_prev, L, pos, i)
        if best is None or upd.delta > best.delta:
            best = upd
    assert best is not None
    return best.alpha, best.Delta - best.alpha, 2 * i


def next_tests(state, policy: PolicySpec) -> list:
    """New test points for the upcoming step, in ascending order.

    The union of the returned points with the retained point (when present)
    sits exactly at the dividing points of the step's partition.  For the
    classical one-test policies a fresh interval yields the symmetric first
    pair (a single midpoint when the pair coincides) and later steps yield
    the mirror image of the retained point.
    """
    validate_policy(policy)
    a, b = exact_number(state.a), exact_number(state.b)
    if not a < b:
        raise ValueError("empty interval")
    retained = None if state.retained is None else exact_number(state.retained)
    if retained is not None and not (a < retained < b):
        raise PolicyStateMismatchError("retained point must be interior")

    if isinstance(policy, (Fibonacci, Golden)):
        if retained is None:
            if isinstance(policy, Fibonacci):
                rem = remaining_horizon(policy, state)
                if rem is None or rem < 1:
                    return []
                from .sequences import f_seq

                F = f_seq(1, rem + 1)
                ratio = Q(F[rem], F[rem + 1])
            else:
                ratio = omega(1)
            x1 = a + ratio * (b - a)
            mirror = a + b - x1
            return [mirror, x1] if mirror < x1 else [x1]
        if policy_finished(policy, state.steps_done):
            return []
        mirror = a + b - retained
        if mirror == retained:
            raise PolicyStateMismatchError("mirror point coincides with the retained point")
        return [mirror]

    if isinstance(policy, Basic):
        alpha, beta, total = _basic_layout(policy, a, b, retained, state.step_local)
    else:
        if policy_finished(policy, state.steps_done):
            return []
        alpha, beta, total = _block_layout(
            policy, state.step_local, b - a, remaining_horizon(policy, state)
        )
        if not (alpha > 0 and beta > 0):
            raise InfeasiblePartitionError("step partition has a nonpositive gap")

    part = partition_points(a, b, alpha, beta, total)
    if retained is None:
        return list(part.points)
    new_points = [p for p in part.points if p != retained]
    if len(new_points) != total - 1:
        raise PolicyStateMismatchError(
            "retained point does not sit on a dividing point of the step partition"
        )
    return new_points
