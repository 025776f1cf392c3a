"""Asymptotic comparison machinery: reference traces, ratio trackers, and the
multiplier sequence behind optimality-at-infinity.

A policy under scrutiny contributes the pair (u_n, v_n) = (accuracy,
interval length) after n steps.  The reference policy contributes
(x_n, y_n) = (sigma w^n, sigma w^{n-1}/i), the unique positive solution of
the forward test-count recursion with x_0 equal to the initial interval
length.  Three families of ratios compare the two:

    mu(m, n)  = (v_n / y_n) / (u_m / x_m)
    lam(m, n) = (v_n / y_n) / (v_m / y_m)
    rho(m, n) = (u_n / x_n) / (u_m / x_m)

They satisfy exact cocycle identities, and the interval-length ratio
v_n/y_n telescopes into a product of lambda factors.  The multiplier
construction extracts from that telescoping a sequence of factors phi_j > 1
whose product lower-bounds the limiting interval-length ratio: factors equal
to one are dropped, and a factor below one is merged with its successor
(the merged two-step factor provably exceeds one).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Union

from .exactnum import Q, QuadNum, omega
from .policies import Basic, OddBlockH, PolicySpec, chi, c_matrix
from .reporting import Report
from .accuracy import trace_basic

ExactNumber = Union[int, Fraction, QuadNum]


class InsufficientTrackError(ValueError):
    """The tracked index range is too short to finish the multiplier construction."""


@dataclass(frozen=True)
class ReferenceTrace:
    """The (x_n, y_n) solution table for a given first-step test count k1."""

    i: int
    k1: int
    sigma: ExactNumber
    x: tuple[ExactNumber, ...]
    y: tuple[ExactNumber, ...]

    def __len__(self) -> int:
        return len(self.x)


def reference_trace(i: int, interval_length: ExactNumber, k1: int, n_max: int) -> ReferenceTrace:
    """Exact (x_n, y_n) for n = 0..n_max with x_0 = interval_length.

    x_n = sigma w^n and y_n = sigma w^{n-1}/i for n >= 1, where
    sigma = (b-a) / (chi(k1) w + floor((k1+1)/2)/i); y_0 is recovered from
    the k1-step of the recursion so the full table satisfies
    (x_n, y_n) = c(k_{n+1}) (x_{n+1}, y_{n+1}) with k_1 = k1 and k_n = 2i-1
    afterwards.
    """
    if i < 2:
        raise ValueError("block order must be >= 2")
    if k1 < 2:
        raise ValueError("first test count must be >= 2")
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    if not interval_length > 0:
        raise ValueError("interval length must be positive")
    w = omega(i)
    sigma = interval_length / (chi(k1) * w + Q((k1 + 1) // 2, i))
    xs: list[ExactNumber] = [interval_length]
    ys: list[ExactNumber] = [None]  # type: ignore[list-item]
    for n in range(1, n_max + 1):
        xs.append(sigma * w**n)
        ys.append(sigma * w ** (n - 1) / i)
    # y_0 via the first recursion row (second component of c(k1) (x1, y1))
    ys[0] = chi(k1 + 1) * xs[1] + ((k1 + 2) // 2) * ys[1]
    return ReferenceTrace(i, k1, sigma, tuple(xs), tuple(ys))


@dataclass(frozen=True)
class PolicyTrace:
    """(u_n, v_n) = (delta(P, n), Delta(P, n)) for the policy under scrutiny."""

    i: int
    k1: int
    u: tuple[ExactNumber, ...]
    v: tuple[ExactNumber, ...]

    def __len__(self) -> int:
        return len(self.u)


def uv_trace_basic(i: int, alpha1: ExactNumber, n_max: int) -> PolicyTrace:
    """Trace of the normalized basic policy (initial interval [0, 1/i], k1 = 2i)."""
    t = trace_basic(alpha1, i, n_max)
    u = [Q(1, i)] + [t.delta(m) for m in range(1, n_max + 1)]
    v = [Q(1, i)] + [t.Delta(m) for m in range(1, n_max + 1)]
    return PolicyTrace(i, 2 * i, tuple(u), tuple(v))


def uv_trace_basic_partial(i: int, alpha1: ExactNumber, n_max: int) -> PolicyTrace:
    """Deepest feasible prefix of the basic trace, at most n_max steps.

    Rational parameters can steer the state exactly onto an open-interval
    endpoint at some step, where no continuation partition exists; the trace
    up to the last clean step is still comparable.
    """
    from .accuracy import BoundaryError

    best: Optional[PolicyTrace] = None
    for n in range(1, n_max + 1):
        try:
            best = uv_trace_basic(i, alpha1, n)
        except BoundaryError:
            break
    if best is None:
        raise InsufficientTrackError("no feasible steps at all for this parameter")
    return best


def uv_trace_h1(i: int, n_max: int) -> PolicyTrace:
    """Trace of the normalized H policy: delta_n = w^{n+1}, Delta_n = w^n / i."""
    w = omega(i)
    u = [Q(1, i)] + [w ** (n + 1) for n in range(1, n_max + 1)]
    v = [Q(1, i)] + [w**n / i for n in range(1, n_max + 1)]
    return PolicyTrace(i, 2 * i, tuple(u), tuple(v))


@dataclass(frozen=True)
class RatioTrack:
    """Ratio trackers of a policy trace against a reference trace."""

    policy: PolicyTrace
    reference: ReferenceTrace

    def __post_init__(self):
        if self.policy.i != self.reference.i:
            raise ValueError("traces disagree on the block order")
        if self.policy.k1 != self.reference.k1:
            raise ValueError("traces disagree on the first-step test count")
        if len(self.policy) != len(self.reference):
            raise ValueError("traces cover different index ranges")
        if self.policy.u[0] != self.reference.x[0]:
            raise ValueError("traces disagree on the initial interval length")

    @property
    def n_max(self) -> int:
        return len(self.policy) - 1

    def _check(self, *idx: int) -> None:
        for m in idx:
            if not 0 <= m <= self.n_max:
                raise IndexError(f"index {m} outside the tracked range")

    def mu(self, m: int, n: int) -> ExactNumber:
        self._check(m, n)
        p, r = self.policy, self.reference
        return (p.v[n] / r.y[n]) / (p.u[m] / r.x[m])

    def lam(self, m: int, n: int) -> ExactNumber:
        self._check(m, n)
        p, r = self.policy, self.reference
        return (p.v[n] / r.y[n]) / (p.v[m] / r.y[m])

    def rho(self, m: int, n: int) -> ExactNumber:
        self._check(m, n)
        p, r = self.policy, self.reference
        return (p.u[n] / r.x[n]) / (p.u[m] / r.x[m])

    def delta_ratio(self, n: int) -> ExactNumber:
        """delta(P, n) / delta(reference, n) = u_n / x_n."""
        self._check(n)
        return self.policy.u[n] / self.reference.x[n]

    def interval_ratio(self, n: int) -> ExactNumber:
        """Delta(P, n) / Delta(reference, n) = v_n / y_n for n >= 1."""
        self._check(n)
        return self.policy.v[n] / self.reference.y[n]


def ratio_trackers(
    policy_trace: PolicyTrace, reference: ReferenceTrace, check_bounds: bool = True
) -> RatioTrack:
    """Pair the traces and (by default) verify the one-step ratio bounds that
    every genuine trace must satisfy for its implied schedule k1, 2i-1, 2i-1, ..."""
    track = RatioTrack(policy_trace, reference)
    if check_bounds:
        i = policy_trace.i
        schedule = [policy_trace.k1] + [2 * i - 1] * (track.n_max - 1)
        report = step_bound_report(track, schedule)
        if not report.ok:
            raise ValueError(f"trace violates one-step ratio bounds: {report.failures()[:2]}")
    return track


def step_bound_report(track: RatioTrack, k_schedule: Sequence[int]) -> Report:
    """One-step lower bounds on lam and mu, by the parity of the step's test count.

    For a 2i-test step: lam(n, n+1) >= 1 and mu(n, n+1) >= i/(i+1); for a
    (2i-1)-test step the two bounds swap.
    """
    i = track.policy.i
    bound = Q(i, i + 1)
    report = Report("one-step ratio bounds")
    for n in range(0, min(track.n_max, len(k_schedule))):
        k = k_schedule[n]
        lam, mu = track.lam(n, n + 1), track.mu(n, n + 1)
        if k == 2 * i:
            report.add("lam-even-step", {"n": n, "k": k}, lam >= 1, f"lam={lam}")
            report.add("mu-even-step", {"n": n, "k": k}, mu >= bound, f"mu={mu}")
        elif k == 2 * i - 1:
            report.add("lam-odd-step", {"n": n, "k": k}, lam >= bound, f"lam={lam}")
            report.add("mu-odd-step", {"n": n, "k": k}, mu >= 1, f"mu={mu}")
        else:
            raise ValueError(f"schedule entry {k} is not a block test count for order {i}")
    return report


# ---------------------------------------------------------------------------
# Multiplier sequence


@dataclass(frozen=True)
class PhiEntry:
    value: ExactNumber
    source: str  # "mu(0,1)", "rho(0,1)", "mu(1,2)", "lam(n,n+1)", "lam(n,n+2)"
    span: tuple[int, int]


@dataclass(frozen=True)
class PhiSequence:
    entries: tuple[PhiEntry, ...]
    #: False when a below-one factor was pending at the track edge (its merge
    #: partner lies beyond the tracked range and was dropped)
    complete: bool = True

    def product(self) -> ExactNumber:
        out: ExactNumber = Q(1)
        for e in self.entries:
            out = out * e.value
        return out

    def __len__(self) -> int:
        return len(self.entries)


def phi_construction(track: RatioTrack, k1_parity: str, allow_open_tail: bool = False) -> PhiSequence:
    """Extract the multiplier factors from a ratio track.

    ``k1_parity`` is "odd" or "even" (the parity of the first step's test
    count).  With an odd first step mu(0,1) >= 1 always holds and seeds the
    sequence when strictly above one.  With an even first step mu(0,1) may
    fall below one; then rho(0,1) > 1 seeds the sequence and mu(1,2) takes
    over the seed role.  The remaining factors come from the one-step
    interval ratios lam(n, n+1): ones are dropped, factors above one are
    kept, and a factor below one is merged with its successor into
    lam(n, n+2) > 1.
    """
    if k1_parity not in ("odd", "even"):
        raise ValueError("k1_parity must be 'odd' or 'even'")
    if track.n_max < 2:
        raise InsufficientTrackError("need at least indices 0..2")
    entries: list[PhiEntry] = []
    mu01 = track.mu(0, 1)
    scan_from = 1
    if k1_parity == "even" and mu01 < 1:
        rho01 = track.rho(0, 1)
        if not rho01 > 1:
            raise ValueError("rho(0,1) must exceed 1 when mu(0,1) < 1")
        entries.append(PhiEntry(rho01, "rho(0,1)", (0, 1)))
        mu12 = track.mu(1, 2)
        if mu12 < 1:
            raise ValueError("mu(1,2) must be >= 1 after an even first step")
        if mu12 > 1:
            entries.append(PhiEntry(mu12, "mu(1,2)", (1, 2)))
        scan_from = 2
    else:
        if mu01 < 1:
            raise ValueError("mu(0,1) must be >= 1 after an odd first step")
        if mu01 > 1:
            entries.append(PhiEntry(mu01, "mu(0,1)", (0, 1)))
    n = scan_from
    while n < track.n_max:
        lam = track.lam(n, n + 1)
        if lam == 1:
            n += 1
            continue
        if lam > 1:
            entries.append(PhiEntry(lam, "lam(n,n+1)", (n, n + 1)))
            n += 1
            continue
        if n + 2 > track.n_max:
            if allow_open_tail:
                return PhiSequence(tuple(entries), complete=False)
            raise InsufficientTrackError(
                f"lam({n},{n + 1}) < 1 at the track edge; extend the trace to merge it"
            )
        merged = track.lam(n, n + 2)
        if not merged > 1:
            raise ValueError(f"merged factor lam({n},{n + 2}) = {merged} is not above 1")
        entries.append(PhiEntry(merged, "lam(n,n+2)", (n, n + 2)))
        n += 2
    return PhiSequence(tuple(entries))


# ---------------------------------------------------------------------------
# Horizon report


@dataclass(frozen=True)
class LimitRatioReport:
    policy: PolicySpec
    requested_n_max: int
    n_max: int  # effective horizon: shorter when the trace hit a boundary
    phi: PhiSequence
    product_lower_bound: ExactNumber
    rows: tuple[tuple[int, ExactNumber, ExactNumber], ...]  # (n, delta_ratio, interval_ratio)
    horizon_delta_ratio: ExactNumber
    horizon_interval_ratio: ExactNumber
    bound_respected: bool

    def to_dict(self) -> dict:
        from .exactnum import format_exact

        return {
            "phi": [
                {
                    "value": format_exact(e.value),
                    "float": float(e.value),
                    "source": e.source,
                    "span": list(e.span),
                }
                for e in self.phi.entries
            ],
            "phi_complete": self.phi.complete,
            "product_lower_bound": format_exact(self.product_lower_bound),
            "requested_n_max": self.requested_n_max,
            "n_max": self.n_max,
            "ratios": [
                {"n": n, "delta_ratio": float(d), "Delta_ratio": float(v)}
                for n, d, v in self.rows
            ],
            "bound_respected": self.bound_respected,
        }


def limit_ratio_check(policy: PolicySpec, n_max: int) -> LimitRatioReport:
    """Finite-horizon comparison of a normalized policy against the reference.

    Reports the tracked delta- and interval-ratio trajectories, the
    multiplier product, and whether every tracked interval ratio beyond the
    last closed multiplier window stays at or above the product (the
    trajectory's limit statement is asserted only at tracked indices).
    """
    if n_max < 8:
        raise ValueError("n_max must be >= 8")
    requested = n_max
    if isinstance(policy, Basic):
        i = policy.i
        ptrace = uv_trace_basic_partial(i, policy.alpha1, n_max)
        n_max = len(ptrace) - 1
    elif isinstance(policy, OddBlockH):
        i = policy.i
        ptrace = uv_trace_h1(i, n_max)
    else:
        raise TypeError("limit_ratio_check compares normalized basic policies")
    ref = reference_trace(i, Q(1, i), 2 * i, n_max)
    track = ratio_trackers(ptrace, ref)
    phi = phi_construction(track, "even", allow_open_tail=True)
    product = phi.product()
    rows = tuple(
        (n, track.delta_ratio(n), track.interval_ratio(n)) for n in range(1, n_max + 1)
    )
    last_closed = max((e.span[1] for e in phi.entries), default=0)
    bound_respected = all(
        track.interval_ratio(n) >= product for n in range(last_closed, n_max + 1) if n >= 1
    )
    return LimitRatioReport(
        policy,
        requested,
        n_max,
        phi,
        product,
        rows,
        track.delta_ratio(n_max),
        track.interval_ratio(n_max),
        bound_respected,
    )


def synthetic_track(
    i: int,
    k1: int,
    v_over_y: Sequence[ExactNumber],
    u_over_x: Sequence[ExactNumber],
) -> RatioTrack:
    """Build a track with prescribed per-index ratios (for construction tests).

    ``v_over_y[n]`` and ``u_over_x[n]`` fix v_n/y_n and u_n/x_n directly on a
    trivial reference (x = y = 1); index 0 of u_over_x must be 1 so the
    normalization u_0 = x_0 holds.
    """
    if len(v_over_y) != len(u_over_x):
        raise ValueError("ratio sequences must have equal length")
    if u_over_x[0] != 1:
        raise ValueError("u_0/x_0 must equal 1")
    n = len(v_over_y) - 1
    ones = tuple(Q(1) for _ in range(n + 1))
    ref = ReferenceTrace(i, k1, Q(1), ones, ones)
    ptrace = PolicyTrace(i, k1, tuple(u_over_x), tuple(v_over_y))
    return RatioTrack(ptrace, ref)
