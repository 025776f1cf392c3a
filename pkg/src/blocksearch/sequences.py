"""Integer sequence tables behind the block-search policies, with checkers.

Three families, all parameterized by the block order i >= 1:

* F-sequence: F_0 = F_1 = 1, F_n = i*(F_{n-1} + F_{n-2}).  Weights the
  general accuracy of odd-block policies; i = 1 is the classical Fibonacci
  sequence.
* G-sequence: G_{-1} = 0, G_0 = 1, same recurrence.  Governs the closed-form
  accuracy traces of basic policies and the threshold constants.
* E-sequence: E_n = 2*(i+1)**n - 1, the even-block analogue of F
  (equivalently the first component of the backward test-count recursion
  when every step tests 2i points).

The checker functions verify the full identity and monotonicity toolbox the
analysis relies on, exhaustively over explicit ranges, using exact
comparisons only.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Literal

from .exactnum import Q, QuadNum, omega
from .reporting import Report

SeqKind = Literal["F", "G", "E"]

_BASE_INDEX: dict[str, int] = {"F": 0, "G": -1, "E": 0}


@dataclass(frozen=True)
class SeqTable:
    """Immutable table of one sequence family, indexed from the kind's base."""

    i: int
    kind: SeqKind
    values: tuple[int, ...]

    @property
    def base(self) -> int:
        return _BASE_INDEX[self.kind]

    @property
    def max_index(self) -> int:
        return self.base + len(self.values) - 1

    def at(self, n: int) -> int:
        if n < self.base or n > self.max_index:
            raise IndexError(f"{self.kind}-sequence index {n} outside table")
        return self.values[n - self.base]

    def __getitem__(self, n: int) -> int:
        return self.at(n)

    def rows(self) -> list[tuple[int, int]]:
        return [(self.base + k, v) for k, v in enumerate(self.values)]

    def to_tsv(self) -> str:
        return "\n".join(f"{n}\t{v}" for n, v in self.rows())

    def to_dict(self) -> dict:
        return {
            "i": self.i,
            "kind": self.kind,
            "base_index": self.base,
            "values": [{"n": n, "value": v} for n, v in self.rows()],
        }


def _check_order(i: int) -> None:
    if i < 1:
        raise ValueError("block order must be >= 1")


def f_seq(i: int, n_max: int) -> SeqTable:
    """F_0 .. F_{n_max}."""
    _check_order(i)
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    vals = [1, 1]
    for _ in range(2, n_max + 1):
        vals.append(i * (vals[-1] + vals[-2]))
    return SeqTable(i, "F", tuple(vals))


def g_seq(i: int, n_max: int) -> SeqTable:
    """G_{-1} .. G_{n_max}."""
    _check_order(i)
    if n_max < 0:
        raise ValueError("n_max must be >= 0")
    vals = [0, 1]
    for _ in range(1, n_max + 1):
        vals.append(i * (vals[-1] + vals[-2]))
    return SeqTable(i, "G", tuple(vals))


def e_seq(i: int, n_max: int) -> SeqTable:
    """E_0 .. E_{n_max} with E_n = 2*(i+1)**n - 1."""
    _check_order(i)
    if n_max < 0:
        raise ValueError("n_max must be >= 0")
    vals = [2 * (i + 1) ** n - 1 for n in range(n_max + 1)]
    return SeqTable(i, "E", tuple(vals))


def g_extended(i: int, n: int) -> Fraction:
    """G_n with the rational extension G_{-2} = 1/i.

    The extension keeps the recurrence valid at n = 0 and is used only inside
    accuracy/threshold formulas, never in the integer tables.
    """
    _check_order(i)
    if n == -2:
        return Q(1, i)
    if n < -2:
        raise ValueError("G-sequence extension only reaches index -2")
    return Q(g_seq(i, max(n, 0)).at(n))


# ---------------------------------------------------------------------------
# Closed forms, evaluated exactly in Q(sqrt(i*(i+4)))


def f_closed_form(i: int, n: int) -> QuadNum:
    """F_n via the Binet-style expansion in powers of the ratio limit."""
    _check_order(i)
    if n < 0:
        raise ValueError("F-sequence starts at index 0")
    w = omega(i)
    d = i * (i + 4)
    s = QuadNum(0, Q(1, i + 4), d)  # sqrt(i/(i+4))
    m = n - 1  # expansion gives F_{m+1} for m >= -1
    term1 = (1 + 3 * s) * w ** (-m)
    term2 = (1 - 3 * s) * ((-i) * w) ** m
    return (term1 + term2) / 2


def g_closed_form(i: int, n: int) -> QuadNum:
    """G_n via the Binet-style expansion."""
    _check_order(i)
    if n < -1:
        raise ValueError("G-sequence starts at index -1")
    w = omega(i)
    d = i * (i + 4)
    inv_sqrt = QuadNum(0, Q(1, d), d)  # 1/sqrt(d) = sqrt(d)/d
    return inv_sqrt * (w ** (-(n + 1)) - ((-i) * w) ** (n + 1))


# ---------------------------------------------------------------------------
# Identity suite

#: identity tag -> (arity, description).  Binary identities iterate (n, m).
IDENTITY_TAGS = ("2.6", "2.7", "2.12", "2.13", "2.18", "2.19")


def _identity_cases(tag: str, i: int, n_max: int) -> Iterable[tuple[dict, int, int]]:
    """Yield (params, lhs, rhs) for each index tuple in the validity range."""
    F = f_seq(i, n_max + 3)
    G = g_seq(i, n_max + 3)
    if tag == "2.6":
        for n in range(1, n_max + 1):
            yield ({"n": n}, F[n + 1] * F[n - 1] - F[n] ** 2, (2 * i - 1) * (-i) ** (n - 1))
    elif tag == "2.7":
        for n in range(2, n_max + 1):
            yield ({"n": n}, F[n] * F[n - 1] - F[n + 1] * F[n - 2], (2 * i - 1) * (-i) ** (n - 1))
    elif tag == "2.12":
        for n in range(0, n_max + 1):
            for m in range(0, n + 2):
                yield (
                    {"n": n, "m": m},
                    G[n] * G[m] - G[n + 1] * G[m - 1],
                    (-i) ** m * G[n - m],
                )
    elif tag == "2.13":
        for n in range(0, n_max + 1):
            for m in range(1, n + 2):
                yield (
                    {"n": n, "m": m},
                    G[n] * G[m] - G[n + 2] * G[m - 2],
                    -((-i) ** m) * G[n - m + 1],
                )
    elif tag == "2.18":
        for n in range(1, n_max + 1):
            yield ({"n": n}, F[n], G[n - 1] + i * G[n - 2])
    elif tag == "2.19":
        for n in range(0, n_max + 1):
            for m in range(1, n + 2):
                yield (
                    {"n": n, "m": m},
                    F[n] * G[m] - F[n + 2] * G[m - 2],
                    -((-i) ** m) * F[n - m + 1],
                )
    else:
        raise ValueError(f"unknown identity tag {tag!r}")


def check_identity(tag: str, i: int, n_max: int) -> Report:
    """Exhaustively verify one identity for all valid indices up to n_max."""
    _check_order(i)
    if n_max < 2:
        raise ValueError("n_max must be >= 2 to exercise the identities")
    report = Report(f"identity {tag} (i={i}, indices<={n_max})")
    for params, lhs, rhs in _identity_cases(tag, i, n_max):
        report.add(tag, {"i": i, **params}, lhs == rhs, f"{lhs} vs {rhs}")
    return report


def check_all_identities(i_values: Iterable[int], n_max: int) -> Report:
    report = Report(f"identity suite (indices<={n_max})")
    for i in i_values:
        for tag in IDENTITY_TAGS:
            report = report.merged(check_identity(tag, i, n_max))
    report.title = f"identity suite (indices<={n_max})"
    return report


def check_closed_forms(i: int, n_max: int) -> Report:
    """Recurrence tables against the exact Binet-style expansions."""
    report = Report(f"closed forms (i={i}, n<={n_max})")
    F = f_seq(i, n_max)
    G = g_seq(i, n_max)
    for n in range(0, n_max + 1):
        report.add("F-closed-form", {"i": i, "n": n}, f_closed_form(i, n) == F[n])
    for n in range(-1, n_max + 1):
        report.add("G-closed-form", {"i": i, "n": n}, g_closed_form(i, n) == G[n])
    return report


def ratio_difference_sign(
    i: int, a: Fraction, b: Fraction, c: Fraction, d: Fraction, n: int, m: int
) -> tuple[int, int]:
    """Sign of the difference of two G-weighted mediant ratios.

    Returns (observed, predicted) where observed is the sign of
    (a*G_m + b*G_{m-1})/(a*G_{n+1} + b*G_n) - (c*G_m + d*G_{m-1})/(c*G_{n+1} + d*G_n)
    and predicted is the sign of (-1)**m * (a*d - b*c).  Requires positive
    a, b, c, d and n >= m >= 0.
    """
    if not (a > 0 and b > 0 and c > 0 and d > 0):
        raise ValueError("weights must be positive")
    if not (n >= m >= 0):
        raise ValueError("need n >= m >= 0")
    G = g_seq(i, n + 1)
    lhs = Q(a * G[m] + b * G[m - 1], a * G[n + 1] + b * G[n]) - Q(
        c * G[m] + d * G[m - 1], c * G[n + 1] + d * G[n]
    )
    observed = (lhs > 0) - (lhs < 0)
    pred_val = (-1) ** m * (a * d - b * c)
    predicted = (pred_val > 0) - (pred_val < 0)
    return observed, predicted


def check_monotone_ratios(i: int, n_max: int) -> Report:
    """Strict ratio monotonicity toward the limit, plus the interleaving chains.

    Covers, for all n up to n_max: odd/even consecutive-term ratios of F and
    G (increasing resp. decreasing to the ratio limit w), the stride-2 ratios
    (limits w^2), and the two F/G interleaving chains
    F_{2n-1}/F_{2n+1} < G_{2n-1}/G_{2n+1} < F_{2n+1}/F_{2n+3} and
    F_{2n}/F_{2n+2} < G_{2n-2}/G_{2n} < F_{2n-2}/F_{2n}.
    """
    _check_order(i)
    if n_max < 2:
        raise ValueError("n_max must be >= 2")
    w = omega(i)
    w2 = w * w
    F = f_seq(i, 2 * n_max + 4)
    G = g_seq(i, 2 * n_max + 4)
    report = Report(f"monotone ratios (i={i}, n<={n_max})")

    def fr(table: SeqTable, p: int, q: int) -> Fraction:
        return Q(table[p], table[q])

    for n in range(1, n_max + 1):
        report.add(
            "F-odd-ratio-increasing",
            {"i": i, "n": n},
            fr(F, 2 * n - 1, 2 * n) < fr(F, 2 * n + 1, 2 * n + 2) and fr(F, 2 * n + 1, 2 * n + 2) < w,
        )
        report.add(
            "F-even-ratio-decreasing",
            {"i": i, "n": n},
            fr(F, 2 * n, 2 * n + 1) > fr(F, 2 * n + 2, 2 * n + 3) and fr(F, 2 * n + 2, 2 * n + 3) > w,
        )
        report.add(
            "F-odd-stride2-increasing",
            {"i": i, "n": n},
            fr(F, 2 * n - 1, 2 * n + 1) < fr(F, 2 * n + 1, 2 * n + 3)
            and fr(F, 2 * n + 1, 2 * n + 3) < w2,
        )
        report.add(
            "F-even-stride2-decreasing",
            {"i": i, "n": n},
            fr(F, 2 * n, 2 * n + 2) > fr(F, 2 * n + 2, 2 * n + 4)
            and fr(F, 2 * n + 2, 2 * n + 4) > w2,
        )
        report.add(
            "G-odd-ratio-increasing",
            {"i": i, "n": n},
            fr(G, 2 * n - 1, 2 * n) < fr(G, 2 * n + 1, 2 * n + 2) and fr(G, 2 * n + 1, 2 * n + 2) < w,
        )
        report.add(
            "G-even-ratio-decreasing",
            {"i": i, "n": n},
            fr(G, 2 * n, 2 * n + 1) > fr(G, 2 * n + 2, 2 * n + 3) and fr(G, 2 * n + 2, 2 * n + 3) > w,
        )
        report.add(
            "G-odd-stride2-increasing",
            {"i": i, "n": n},
            fr(G, 2 * n - 1, 2 * n + 1) < fr(G, 2 * n + 1, 2 * n + 3)
            and fr(G, 2 * n + 1, 2 * n + 3) < w2,
        )
        report.add(
            "G-even-stride2-decreasing",
            {"i": i, "n": n},
            fr(G, 2 * n, 2 * n + 2) > fr(G, 2 * n + 2, 2 * n + 4)
            and fr(G, 2 * n + 2, 2 * n + 4) > w2,
        )
        report.add(
            "FG-interleave-odd",
            {"i": i, "n": n},
            fr(F, 2 * n - 1, 2 * n + 1) < fr(G, 2 * n - 1, 2 * n + 1)
            and fr(G, 2 * n - 1, 2 * n + 1) < fr(F, 2 * n + 1, 2 * n + 3),
        )
        report.add(
            "FG-interleave-even",
            {"i": i, "n": n},
            fr(F, 2 * n, 2 * n + 2) < fr(G, 2 * n - 2, 2 * n)
            and fr(G, 2 * n - 2, 2 * n) < fr(F, 2 * n - 2, 2 * n),
        )
    return report
