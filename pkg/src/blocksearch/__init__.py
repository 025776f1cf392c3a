"""blocksearch: exact analysis and interactive execution of unimodal block-search policies."""

from .exactnum import (
    MismatchedRadicandError,
    Q,
    QuadNum,
    as_exact,
    format_exact,
    omega,
    parse_exact,
    to_float,
)
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
    PolicyStateMismatchError,
    TwoTestSpecial,
    c_matrix,
    first_alpha,
    next_tests,
    partition_points,
    policy_from_json,
    policy_to_json,
    xy_backward,
)
from .sequences import SeqTable, e_seq, f_seq, g_seq
from .accuracy import (
    BoundaryError,
    general_accuracy,
    locate_position,
    step_accuracy,
    step_update,
    subinterval_classify,
    thresholds,
    trace_basic,
    verify_inequalities,
)
from .oracle import witness_function, worst_case_accuracy
from .runtime import SearchState, eliminate, run_search, start_search

__version__ = "0.1.0"

__all__ = [
    "Basic",
    "BoundaryError",
    "EvenBlock",
    "Fibonacci",
    "Golden",
    "InfeasiblePartitionError",
    "MismatchedRadicandError",
    "OddBlockG",
    "OddBlockH",
    "OddBlockW",
    "PolicySpec",
    "PolicyStateMismatchError",
    "Q",
    "QuadNum",
    "SearchState",
    "SeqTable",
    "TwoTestSpecial",
    "as_exact",
    "c_matrix",
    "e_seq",
    "eliminate",
    "f_seq",
    "first_alpha",
    "format_exact",
    "g_seq",
    "general_accuracy",
    "locate_position",
    "next_tests",
    "omega",
    "parse_exact",
    "partition_points",
    "policy_from_json",
    "policy_to_json",
    "run_search",
    "start_search",
    "step_accuracy",
    "step_update",
    "subinterval_classify",
    "thresholds",
    "to_float",
    "trace_basic",
    "verify_inequalities",
    "witness_function",
    "worst_case_accuracy",
    "xy_backward",
]
