from __future__ import annotations

import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from blocksearch.accuracy import (
    BoundaryError,
    InfeasiblePositionError,
    PreconditionError,
    closed_form_Delta,
    closed_form_delta,
    delta_h,
    delta_w,
    general_accuracy,
    limit_bracket_report,
    locate_position,
    omega_limit,
    step_accuracy,
    step_update,
    subinterval_classify,
    thresholds,
    trace_basic,
    verify_inequalities,
)
from blocksearch.exactnum import Q, QuadNum, omega
from blocksearch.policies import (
    Basic,
    EvenBlock,
    Fibonacci,
    Golden,
    InfeasiblePartitionError,
    OddBlockG,
    OddBlockH,
    OddBlockW,
    TwoTestSpecial,
    chi,
    h_first_alpha,
)
from blocksearch.sequences import f_seq, g_seq

# ---------------------------------------------------------------------------
# Position location and the one-step update


def test_locate_position_cases_order2():
    assert locate_position(Q(7, 10), Q(1), 2) == {4}
    assert locate_position(Q(6, 10), Q(1), 2) == {3}


def test_locate_position_boundary():
    with pytest.raises(BoundaryError) as err:
        locate_position(Q(2, 3), Q(1), 2)
    assert "K(2)" in str(err.value)


def test_locate_position_precondition():
    with pytest.raises(PreconditionError):
        locate_position(Q(1, 2), Q(1), 2)
    with pytest.raises(PreconditionError):
        locate_position(Q(1), Q(1), 2)


def test_locate_position_unique_cells_order3():
    # cells alternate between even and odd positions as delta grows
    assert locate_position(Q(55, 100), Q(1), 3) == {4}
    assert locate_position(Q(70, 100), Q(1), 3) == {5}
    assert locate_position(Q(80, 100), Q(1), 3) == {6}
    with pytest.raises(BoundaryError):
        locate_position(Q(2, 3), Q(1), 3)  # alpha degenerates at j*Delta/i
    with pytest.raises(BoundaryError):
        locate_position(Q(3, 4), Q(1), 3)  # beta degenerates at K(3)


def test_step_update_examples():
    upd = step_update(Q(7, 10), Q(1), 4, 2)
    assert (upd.alpha, upd.Delta, upd.delta) == (Q(3, 10), Q(7, 20), Q(3, 10))
    upd = step_update(Q(62, 100), Q(1), 3, 2)
    assert (upd.alpha, upd.Delta, upd.delta) == (Q(6, 25), Q(19, 50), Q(6, 25))
    upd = step_update(Q(82, 100), Q(1), 4, 2)
    assert (upd.alpha, upd.Delta, upd.delta) == (Q(9, 50), Q(41, 100), Q(23, 100))


def test_step_update_branch_boundary():
    # equality in the long-gap condition at delta = l*Delta/(2i+1)
    with pytest.raises(BoundaryError):
        step_update(Q(4, 5), Q(1), 4, 2)


def test_step_update_infeasible_position():
    with pytest.raises(InfeasiblePositionError):
        step_update(Q(7, 10), Q(1), 3, 2)
    with pytest.raises(InfeasiblePositionError):
        step_update(Q(7, 10), Q(1), 7, 2)


@given(
    st.fractions(min_value=Fraction(1, 2), max_value=Fraction(1), max_denominator=97),
    st.integers(min_value=2, max_value=6),
)
@settings(max_examples=200)
def test_step_update_reconstruction(delta_prev, i):
    """The update must invert the dividing-point system exactly."""
    Delta_prev = Q(1)
    if not Delta_prev / 2 < delta_prev < Delta_prev:
        return
    try:
        positions = locate_position(delta_prev, Delta_prev, i)
    except BoundaryError:
        return
    assert len(positions) == 1  # feasibility cells never overlap
    (l,) = positions
    try:
        upd = step_update(delta_prev, Delta_prev, l, i)
    except BoundaryError:
        return
    assert chi(l - 1) * upd.alpha + (l // 2) * upd.Delta == delta_prev
    assert upd.alpha + i * upd.Delta == Delta_prev
    assert upd.Delta > upd.alpha
    beta = upd.Delta - upd.alpha
    assert upd.delta == max(upd.alpha, beta)


# ---------------------------------------------------------------------------
# Traces and closed forms


def test_trace_first_steps_match_spec_values():
    t = trace_basic(Q(11, 100), 2, 1)
    assert t.delta(1) == Q(11, 100)
    assert t.Delta(1) == Q(39, 200)
    t = trace_basic(Q(13, 100), 2, 2)
    assert t.delta(2) == Q(11, 200)
    assert t.Delta(2) == Q(13, 200)


def test_trace_h_fixed_point():
    # alpha1 = w^2 reproduces the stationary tail delta_m = w^{m+1}
    w = omega(2)
    t = trace_basic(w**2, 2, 6)
    for m in range(1, 7):
        assert t.delta(m) == w ** (m + 1)
        assert t.Delta(m) == w**m / 2


def test_trace_boundary_errors():
    with pytest.raises(BoundaryError):
        trace_basic(Q(1, 10), 2, 3)  # F_1/F_3
    with pytest.raises(BoundaryError):
        trace_basic(Q(1, 6), 2, 3)  # G_0/G_2
    with pytest.raises(InfeasiblePartitionError):
        trace_basic(Q(2, 10), 2, 3)
    with pytest.raises(PreconditionError):
        trace_basic(Q(3, 5), 2, 3)


def test_trace_explicit_positions_replay():
    auto = trace_basic(Q(13, 100), 2, 4)
    replay = trace_basic(Q(13, 100), 2, 4, positions=[r.position for r in auto.records[1:]])
    assert replay == auto


def test_trace_invariants():
    for alpha1, i, n in ((Q(13, 100), 2, 4), (omega(2) ** 2, 2, 8), (Q(7, 100), 3, 3)):
        t = trace_basic(alpha1, i, n)
        for m in range(1, n + 1):
            r = t.records[m - 1]
            assert t.Delta(m) < t.Delta(m - 1)  # intervals strictly shrink
            assert r.Delta > r.alpha  # both partition gaps positive
            beta = r.Delta - r.alpha
            assert r.delta in (r.alpha, beta)
            assert 2 * r.delta > r.Delta  # retained point past the midpoint


def _eligible_intervals(i: int, depth: int):
    """(lo, hi, m_max) for the sub-intervals where the closed forms apply."""
    F = f_seq(i, 2 * depth + 4)
    G = g_seq(i, 2 * depth + 4)
    out = []
    for n in range(1, depth + 1):
        out.append((Q(F[2 * n - 1], F[2 * n + 1]), Q(G[2 * n - 1], G[2 * n + 1]), 2 * n - 1))
        out.append((Q(G[2 * n - 1], G[2 * n + 1]), Q(F[2 * n + 1], F[2 * n + 3]), 2 * n))
        out.append((Q(G[2 * n], G[2 * n + 2]), Q(F[2 * n], F[2 * n + 2]), 2 * n))
        out.append((Q(F[2 * n], F[2 * n + 2]), Q(G[2 * n - 2], G[2 * n]), 2 * n - 1))
    return out


def test_chained_trace_matches_closed_forms():
    rng = random.Random(20240811)
    for i in (2, 3):
        for lo, hi, m_max in _eligible_intervals(i, 2):
            for _ in range(25):
                k = rng.randrange(1, 1009)
                alpha1 = lo + (hi - lo) * Q(k, 1009)
                t = trace_basic(alpha1, i, m_max)
                for m in range(1, m_max + 1):
                    assert t.delta(m) == closed_form_delta(i, alpha1, m), (i, alpha1, m)
                    assert t.Delta(m) == closed_form_Delta(i, alpha1, m), (i, alpha1, m)


def test_closed_form_extension_at_step_one():
    # Delta_1 = (1/i - alpha1)/i through the G_{-2} = 1/i convention
    for i in (2, 3, 5):
        a1 = Q(1, 10 * i)
        assert closed_form_Delta(i, a1, 1) == (Q(1, i) - a1) / i


# ---------------------------------------------------------------------------
# Step accuracies


def test_step_accuracy_examples():
    assert step_accuracy(Fibonacci(3), 3) == Q(1, 5)
    assert step_accuracy(OddBlockG(2, 3), 3) == Q(1, 28)
    w = omega(2)
    assert step_accuracy(OddBlockH(2), 1) == w / 2 + w * w
    assert step_accuracy(OddBlockW(2), 5) == w**5
    assert step_accuracy(Golden(), 4) == omega(1) ** 4
    assert step_accuracy(EvenBlock(2), 1) == Q(1, 5)
    assert step_accuracy(EvenBlock(2), 3) == Q(1, 45)
    assert step_accuracy(TwoTestSpecial(), 1) == Q(3, 7)
    assert step_accuracy(TwoTestSpecial(), 3) == Q(1, 14)


def test_fixed_horizon_fibonacci_profile():
    F = f_seq(1, 7)
    for n in range(1, 7):
        assert step_accuracy(Fibonacci(6), n) == Q(F[6 - n + 1], F[7])


def test_h_first_step_larger_gap():
    # the defining first gap is the longer one for every order checked
    for i in range(2, 51):
        a1 = h_first_alpha(i)
        assert a1 > Q(1, i) - a1


def test_g_horizon_matches_backward_recursion():
    from blocksearch.policies import xy_backward

    for i in (2, 3):
        for n in range(1, 5):
            plan = xy_backward([2 * i - 1] * n)
            assert step_accuracy(OddBlockG(i, n), n) == Q(1, plan.x(0))


# ---------------------------------------------------------------------------
# General accuracy


def test_general_accuracy_w():
    ga = general_accuracy(OddBlockW(2), 12)
    assert ga.sup_value == delta_w(2) == 4 * omega(2)
    assert ga.attained_at == 1
    assert ga.converged
    assert abs(float(ga.sup_value) - 1.4641016) < 1e-6


def test_general_accuracy_h():
    ga = general_accuracy(OddBlockH(2), 12)
    assert ga.sup_value == delta_h(2) == 28 * omega(2) ** 3
    assert ga.attained_at == 3
    assert ga.converged
    assert abs(float(ga.sup_value) - 1.3730667) < 1e-6


def test_general_accuracy_limit_value():
    L = omega_limit(2)
    assert abs(float(L) - 1.3660254) < 1e-6
    # equivalent closed form (2(i+1) + 3iw)/(i+4)
    for i in range(2, 11):
        w = omega(i)
        assert omega_limit(i) == (2 * (i + 1) + 3 * i * w) / (i + 4)


def test_general_accuracy_even_block():
    ga = general_accuracy(EvenBlock(2), 10)
    assert ga.sup_value == Q(6, 5) == Q(2 * 3, 5)
    assert ga.attained_at is None and ga.converged


def test_general_accuracy_two_test():
    ga = general_accuracy(TwoTestSpecial(), 10)
    assert ga.sup_value == Q(9, 7)
    assert ga.limit == Q(8, 7)
    assert ga.attained_at == 1 and ga.converged


def test_general_accuracy_basic_h_point():
    ga = general_accuracy(Basic(2, omega(2) ** 2), 10)
    assert ga.sup_value == delta_h(2)
    assert ga.converged


def test_general_accuracy_basic_generic_not_converged():
    ga = general_accuracy(Basic(2, Q(13, 100)), 4)
    assert not ga.converged
    assert ga.sup_value >= delta_h(2)  # dismissed parameter: never beats the optimum


def test_trace_can_end_on_an_exact_breakpoint():
    # rational parameters may steer the state onto a breakpoint at deeper
    # steps, where no continuation partition exists; that surfaces loudly
    with pytest.raises(BoundaryError):
        trace_basic(Q(13, 100), 2, 8)


def test_limit_bracket():
    for i in (2, 5, 10):
        report = limit_bracket_report(i, 12)
        assert report.ok, report.failures()[:2]


def test_w_beats_limit_h_beats_limit():
    for i in range(2, 51):
        assert delta_w(i) > omega_limit(i)
        assert delta_h(i) > omega_limit(i)
        assert delta_w(i) > delta_h(i)


def test_h_sup_is_the_tail_value():
    # max(F_2 delta(H,1), F_4 w^3) = F_4 w^3 across orders
    for i in range(2, 51):
        w = omega(i)
        head = 2 * i * step_accuracy(OddBlockH(i), 1)
        assert head < delta_h(i)


# ---------------------------------------------------------------------------
# Thresholds and inequality suite


def test_thresholds_examples():
    th = thresholds(2, 4)
    assert th.A[1] == th.delta_star / 10  # F_3 = 10 at order 2
    assert th.A[2] == omega(2) ** 2
    assert th.gamma > 1
    assert abs(float(th.gamma) - 1.005154) < 1e-6
    # the m=1 tail condition reduces to alpha1 >= 1/i - i*gamma*w^2
    bound = Q(1, 2) - 2 * th.gamma * omega(2) ** 2
    assert bound == -th.B[1]
    assert abs(float(bound) - 0.23067) < 1e-5


def test_thresholds_a_reproduction_wide():
    for i in range(2, 51):
        th = thresholds(i, 2)
        F3 = i * (2 * i + 1)
        assert th.A[1] == th.delta_star / F3
        assert th.A[2] == omega(i) ** 2


def test_thresholds_rejects_small_order():
    with pytest.raises(ValueError):
        thresholds(1, 3)


def test_inequality_suite():
    report = verify_inequalities(range(2, 51))
    assert report.ok, report.failures()[:3]


def test_inequality_spot_values():
    w = omega(2)
    ds = delta_h(2)
    assert ds < Q(4 * 76, 208)  # F_2 F_5 / F_6 at order 2
    assert 4 * (w / 2 + w * w) < ds  # first-step head below the sup
    assert delta_w(2) > ds


# ---------------------------------------------------------------------------
# Sub-interval classification


def test_classify_examples():
    tag = subinterval_classify(Q(11, 100), 2)
    assert (tag.name, tag.n) == ("odd-FG", 1)
    assert (tag.lower, tag.upper) == (Q(1, 10), Q(1, 8))
    assert tag.dismissal == "B-thresholds"

    assert subinterval_classify(omega(2) ** 2, 2).name == "h-point"

    tag = subinterval_classify(Q(2, 10), 2)
    assert tag.name == "top" and tag.dismissal == "rejected-no-partition"


def test_classify_families():
    tag = subinterval_classify(Q(13, 100), 2)  # between G_1/G_3 and F_2/F_4... check
    assert tag.name in ("odd-GF", "even-FG", "even-GF")
    tag = subinterval_classify(Q(145, 1000), 2)
    assert tag.name == "even-FG" and tag.n == 1 and tag.dismissal == "B-thresholds"
    tag = subinterval_classify(Q(1345, 10000), 2)
    assert tag.name in ("odd-FG", "odd-GF") or tag.n >= 1


def test_classify_boundaries_and_preconditions():
    with pytest.raises(BoundaryError):
        subinterval_classify(Q(1, 10), 2)
    with pytest.raises(BoundaryError):
        subinterval_classify(Q(1, 6), 2)
    with pytest.raises(PreconditionError):
        subinterval_classify(Q(3, 5), 2)


def test_classify_partition_of_range():
    """Any valid alpha1 off the boundary chain gets exactly one home."""
    rng = random.Random(7)
    for _ in range(200):
        a1 = Q(rng.randrange(1, 5000), 10000)
        if not 0 < a1 < Q(1, 2):
            continue
        try:
            tag = subinterval_classify(a1, 2)
        except BoundaryError:
            continue
        if tag.name not in ("h-point", "below-first-threshold", "top"):
            assert tag.lower < a1 < tag.upper


def test_classify_agrees_with_closed_form_eligibility():
    for i in (2, 3):
        for lo, hi, m_max in _eligible_intervals(i, 2):
            mid = (lo + hi) / 2
            tag = subinterval_classify(mid, i)
            assert tag.closed_form_m_max == m_max, (i, mid, tag)
