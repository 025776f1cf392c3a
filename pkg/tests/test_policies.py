from __future__ import annotations

from fractions import Fraction

import pytest

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
    PlainState,
    PolicyStateMismatchError,
    TwoTestSpecial,
    c_matrix,
    chi,
    first_alpha,
    h_first_alpha,
    next_tests,
    partition_points,
    policy_from_json,
    policy_to_json,
    validate_policy,
    xy_backward,
)
from blocksearch.sequences import f_seq


def test_chi():
    assert [chi(k) for k in range(1, 7)] == [0, 1, 0, 1, 0, 1]


def test_c_matrix_examples():
    assert c_matrix(3).rows == ((0, 2), (1, 2))
    assert c_matrix(2).rows == ((1, 1), (0, 2))
    assert c_matrix(1).rows == ((0, 1), (1, 1))
    with pytest.raises(ValueError):
        c_matrix(0)


def test_c_matrix_determinants():
    # det c(2i-1) = -i and det c(2i) = i+1, regression-checked over k <= 40
    for k in range(1, 41):
        det = c_matrix(k).det()
        if k % 2 == 1:
            assert det == -((k + 1) // 2)
        else:
            assert det == k // 2 + 1


def test_xy_backward_examples():
    plan = xy_backward([3, 3, 3])
    assert plan.pairs == ((28, 38), (10, 14), (4, 5), (1, 2))
    assert plan.x(0) == 28  # the order-2 block sequence at index 4
    assert xy_backward([4]).pairs == ((5, 6), (1, 2))
    assert xy_backward([3]).pairs == ((4, 5), (1, 2))


def test_xy_backward_validation():
    with pytest.raises(ValueError):
        xy_backward([])
    with pytest.raises(ValueError):
        xy_backward([1, 3])


def test_xy_reproduces_f_and_e_sequences():
    # odd counts need the first-step minimum of two tests, hence order >= 2
    for i in range(2, 7):
        F = f_seq(i, 13)
        for n in range(1, 13):
            assert xy_backward([2 * i - 1] * n).x(0) == F[n + 1]
    for i in range(1, 5):
        for n in range(1, 8):
            assert xy_backward([2 * i] * n).x(0) == 2 * (i + 1) ** n - 1


def test_first_alpha_values():
    w = omega(2)
    assert first_alpha(OddBlockH(2)) == w / 2 + w * w
    assert first_alpha(Fibonacci(3)) == Q(3, 5)
    assert first_alpha(TwoTestSpecial()) == (Q(3, 7), Q(4, 7))
    assert first_alpha(Golden()) == omega(1)
    assert first_alpha(OddBlockW(3)) == omega(3)
    assert first_alpha(OddBlockG(2, 3)) == Q(5, 14)
    assert first_alpha(EvenBlock(2)) == Q(1, 5)


def test_h_first_alpha_parity():
    # chi(i) switches the limit-ratio term on only for even orders
    w3 = omega(3)
    assert h_first_alpha(3) == Q(2, 3) * w3
    w4 = omega(4)
    assert h_first_alpha(4) == (Q(2, 4) + w4) * w4


def test_policy_validation():
    with pytest.raises(ValueError):
        validate_policy(OddBlockW(1))
    with pytest.raises(ValueError):
        validate_policy(Fibonacci(0))
    with pytest.raises(ValueError):
        validate_policy(Basic(2, Q(1, 2)))
    validate_policy(Basic(2, Q(1, 8)))


def test_policy_json_roundtrip():
    policies = [
        Fibonacci(5),
        Golden(),
        EvenBlock(3),
        OddBlockG(2, 4),
        OddBlockW(2),
        OddBlockH(4),
        Basic(2, Q(13, 100)),
        Basic(2, omega(2) ** 2),
        TwoTestSpecial(),
    ]
    for p in policies:
        assert policy_from_json(policy_to_json(p)) == p
    with pytest.raises(ValueError):
        policy_from_json({"type": "nope"})
    with pytest.raises(ValueError):
        policy_from_json({"type": "basic", "i": 2})


def test_partition_points_equal_gaps():
    part = partition_points(Q(0), Q(1), Q(1, 5), Q(1, 5), 4)
    assert part.points == (Q(1, 5), Q(2, 5), Q(3, 5), Q(4, 5))


def test_partition_points_alternating():
    part = partition_points(Q(0), Q(1), Q(3, 7), Q(1, 7), 2)
    assert part.points == (Q(3, 7), Q(4, 7))


def test_partition_points_infeasible():
    with pytest.raises(InfeasiblePartitionError):
        partition_points(Q(0), Q(1), Q(1, 5), Q(1, 5), 3)
    with pytest.raises(InfeasiblePartitionError):
        partition_points(Q(0), Q(1), Q(1, 2), Q(-1, 2), 2)


def fresh(a=0, b=1):
    return PlainState(Q(a), Q(b), None, 1, 0)


def test_next_tests_golden_fresh():
    w = omega(1)
    points = next_tests(fresh(), Golden())
    assert points == [1 - w, w]


def test_next_tests_fibonacci():
    assert next_tests(fresh(), Fibonacci(3)) == [Q(2, 5), Q(3, 5)]
    assert next_tests(fresh(), Fibonacci(1)) == [Q(1, 2)]
    state = PlainState(Q(2, 5), Q(1), Q(3, 5), 2, 2)
    assert next_tests(state, Fibonacci(3)) == [Q(4, 5)]
    done = PlainState(Q(2, 5), Q(4, 5), Q(3, 5), 3, 3)
    assert next_tests(done, Fibonacci(3)) == []


def test_next_tests_h_block():
    points = next_tests(fresh(), OddBlockH(2))
    a1 = h_first_alpha(2)
    assert points == [a1, Q(1, 2), Q(1, 2) + a1]


def test_next_tests_w_powers():
    # the stationary policy's step-m partition gaps are w^m and w^{m+1} on [0,1]
    w = omega(2)
    state = fresh()
    pts = next_tests(state, OddBlockW(2))
    assert pts[0] == w  # first gap
    widths1 = [b - a for a, b in zip([state.a] + pts, pts + [state.b])]
    assert widths1 == [w, w**2, w, w**2]
    # argmax at the top point: remaining (pts[1], 1], retained pts[2]
    st2 = PlainState(pts[1], Q(1), pts[2], 2, 1)
    pts2 = next_tests(st2, OddBlockW(2))
    all_points = sorted(pts2 + [st2.retained])
    widths2 = [b - a for a, b in zip([st2.a] + all_points, all_points + [st2.b])]
    assert widths2 == [w**2, w**3, w**2, w**3, w**2]
    # argmax at the third point: remaining spans its two neighbor gaps
    st3 = PlainState(all_points[1], all_points[3], all_points[2], 3, 2)
    pts3 = next_tests(st3, OddBlockW(2))
    pts3_all = sorted(pts3 + [st3.retained])
    widths3 = [b - a for a, b in zip([st3.a] + pts3_all, pts3_all + [st3.b])]
    assert widths3 == [w**3, w**4, w**3, w**4, w**3]


def test_next_tests_retained_must_match():
    bad = PlainState(Q(1, 2), Q(1), Q(3, 4), 2, 1)
    with pytest.raises(PolicyStateMismatchError):
        next_tests(bad, OddBlockH(2))


def test_next_tests_strictly_increasing_interior():
    cases = [
        (fresh(), OddBlockH(2)),
        (fresh(), OddBlockW(3)),
        (fresh(), EvenBlock(3)),
        (fresh(), TwoTestSpecial()),
        (fresh(), OddBlockG(3, 2)),
        (PlainState(Q(0), Q(1, 2), None, 1, 0), Basic(2, Q(13, 100))),
    ]
    for state, policy in cases:
        pts = next_tests(state, policy)
        assert all(x < y for x, y in zip(pts, pts[1:]))
        assert all(state.a < p < state.b for p in pts)


def test_next_tests_mirrored_retained_accepted():
    # both orientations of the remaining interval land on dividing points
    w = omega(2)
    a1 = h_first_alpha(2)
    st_mirror = PlainState(a1, Q(1, 2) + a1, Q(1, 2), 2, 1)
    pts = next_tests(st_mirror, OddBlockH(2))
    assert len(pts) == 3


def test_basic_first_step_infeasible():
    state = PlainState(Q(0), Q(1, 2), None, 1, 0)
    with pytest.raises(InfeasiblePartitionError):
        next_tests(state, Basic(2, Q(2, 10)))  # above G_0/G_2 = 1/6
