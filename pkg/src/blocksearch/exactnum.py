"""Exact arithmetic over the rationals and the real quadratic field Q(sqrt(d)).

Every geometric quantity in this package (test points, interval lengths,
accuracy constants) is either a rational number or an element a + b*sqrt(d)
with rational a, b and a fixed non-square integer radicand d.  Several of the
inequalities we must decide are razor thin (ratios within 0.5% of 1), so all
comparisons are carried out with integer arithmetic only; floating point
appears solely at the display boundary via :func:`to_float`, which returns a
value together with a guaranteed error bound.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from math import isqrt
from typing import Union

Q = Fraction

#: Anything accepted by the arithmetic entry points.
ExactLike = Union[int, Fraction, "QuadNum"]


class MismatchedRadicandError(ValueError):
    """Two quadratic numbers with different radicands cannot interoperate."""


def is_perfect_square(n: int) -> bool:
    if n < 0:
        return False
    r = isqrt(n)
    return r * r == n


def _rational_sign(q: Fraction) -> int:
    return (q > 0) - (q < 0)


class QuadNum:
    """An exact element a + b*sqrt(d) of Q(sqrt(d)).

    Invariants: d >= 0, d == 0 iff b == 0 (pure rationals are normalized to
    d = 0), and d is never a perfect square when b != 0 (square radicands are
    folded into the rational part on construction).  Instances are immutable
    and hash-compatible with Fraction when purely rational.
    """

    __slots__ = ("a", "b", "d")

    def __init__(self, a: ExactLike = 0, b: int | Fraction = 0, d: int = 0):
        if isinstance(a, QuadNum):
            if b != 0:
                raise TypeError("cannot combine a QuadNum with extra sqrt terms")
            object.__setattr__(self, "a", a.a)
            object.__setattr__(self, "b", a.b)
            object.__setattr__(self, "d", a.d)
            return
        av = Q(a)
        bv = Q(b)
        dv = int(d)
        if dv < 0:
            raise ValueError("radicand must be nonnegative")
        if bv == 0:
            dv = 0
        elif dv == 0:
            bv = Q(0)
        elif is_perfect_square(dv):
            av += bv * isqrt(dv)
            bv = Q(0)
            dv = 0
        object.__setattr__(self, "a", av)
        object.__setattr__(self, "b", bv)
        object.__setattr__(self, "d", dv)

    def __setattr__(self, name, value):  # pragma: no cover - defensive
        raise AttributeError("QuadNum is immutable")

    # -- coercion -----------------------------------------------------------

    @staticmethod
    def _coerce(x: ExactLike) -> "QuadNum":
        if isinstance(x, QuadNum):
            return x
        if isinstance(x, (int, Fraction)):
            return QuadNum(x)
        raise TypeError(f"cannot interpret {type(x).__name__} as an exact number")

    def _join_d(self, other: "QuadNum") -> int:
        if self.d == other.d:
            return self.d
        if self.d == 0:
            return other.d
        if other.d == 0:
            return self.d
        raise MismatchedRadicandError(
            f"mixed radicands sqrt({self.d}) and sqrt({other.d})"
        )

    # -- field operations ---------------------------------------------------

    def __add__(self, other: ExactLike) -> "QuadNum":
        try:
            o = self._coerce(other)
        except TypeError:
            return NotImplemented
        d = self._join_d(o)
        return QuadNum(self.a + o.a, self.b + o.b, d)

    __radd__ = __add__

    def __neg__(self) -> "QuadNum":
        return QuadNum(-self.a, -self.b, self.d)

    def __sub__(self, other: ExactLike) -> "QuadNum":
        try:
            o = self._coerce(other)
        except TypeError:
            return NotImplemented
        d = self._join_d(o)
        return QuadNum(self.a - o.a, self.b - o.b, d)

    def __rsub__(self, other: ExactLike) -> "QuadNum":
        return (-self) + other

    def __mul__(self, other: ExactLike) -> "QuadNum":
        try:
            o = self._coerce(other)
        except TypeError:
            return NotImplemented
        d = self._join_d(o)
        # (a + b sqrt(d)) (a' + b' sqrt(d)) = aa' + bb'd + (ab' + a'b) sqrt(d)
        return QuadNum(self.a * o.a + self.b * o.b * d, self.a * o.b + o.a * self.b, d)

    __rmul__ = __mul__

    def inverse(self) -> "QuadNum":
        if self.is_zero():
            raise ZeroDivisionError("division by zero")
        norm = self.a * self.a - self.b * self.b * self.d
        # norm == 0 would force sqrt(d) rational, impossible for non-square d
        return QuadNum(self.a / norm, -self.b / norm, self.d)

    def __truediv__(self, other: ExactLike) -> "QuadNum":
        try:
            o = self._coerce(other)
        except TypeError:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other: ExactLike) -> "QuadNum":
        return self.inverse() * other

    def __pow__(self, n: int) -> "QuadNum":
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        result = QuadNum(1, 0, self.d)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    # -- exact sign and order ----------------------------------------------

    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0

    def sign(self) -> int:
        """Sign of a + b*sqrt(d), decided with integer arithmetic only.

        When a and b agree in sign the answer is immediate; otherwise compare
        a^2 against b^2*d (cross-multiplied over the rational denominators):
        for a > 0 > b, the value is positive iff a^2 > b^2 d, and symmetrically
        for a < 0 < b.
        """
        sa, sb = _rational_sign(self.a), _rational_sign(self.b)
        if sb == 0:
            return sa
        if sa == 0:
            return sb
        if sa == sb:
            return sa
        cmp_sq = _rational_sign(self.a * self.a - self.b * self.b * self.d)
        return sa * cmp_sq if cmp_sq else 0

    def _cmp(self, other: ExactLike) -> int:
        o = self._coerce(other)
        self._join_d(o)
        return (self - o).sign()

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            return self.b == 0 and self.a == other
        if isinstance(other, QuadNum):
            if self.d != other.d and self.b != 0 and other.b != 0:
                return False
            return self.a == other.a and self.b == other.b
        return NotImplemented

    def __lt__(self, other) -> bool:
        try:
            return self._cmp(other) < 0
        except TypeError:
            return NotImplemented

    def __le__(self, other) -> bool:
        try:
            return self._cmp(other) <= 0
        except TypeError:
            return NotImplemented

    def __gt__(self, other) -> bool:
        try:
            return self._cmp(other) > 0
        except TypeError:
            return NotImplemented

    def __ge__(self, other) -> bool:
        try:
            return self._cmp(other) >= 0
        except TypeError:
            return NotImplemented

    def __hash__(self) -> int:
        if self.b == 0:
            return hash(self.a)
        return hash((self.a, self.b, self.d))

    def __bool__(self) -> bool:
        return not self.is_zero()

    # -- conversion ---------------------------------------------------------

    def enclosure(self, precision_bits: int = 64) -> tuple[Fraction, Fraction]:
        """Rational interval [lo, hi] guaranteed to contain the exact value."""
        if self.b == 0:
            return (self.a, self.a)
        lo_s, hi_s = sqrt_enclosure(self.d, precision_bits)
        if self.b > 0:
            return (self.a + self.b * lo_s, self.a + self.b * hi_s)
        return (self.a + self.b * hi_s, self.a + self.b * lo_s)

    def __float__(self) -> float:
        return to_float(self, 53)[0]

    def __repr__(self) -> str:
        return f"QuadNum({self.a!r}, {self.b!r}, {self.d})"

    def __str__(self) -> str:
        return format_exact(self)


def sqrt_enclosure(d: int, precision_bits: int) -> tuple[Fraction, Fraction]:
    """Rational bounds lo <= sqrt(d) <= hi with hi - lo = 2**-precision_bits."""
    if d < 0:
        raise ValueError("negative radicand")
    k = precision_bits
    n = isqrt(d << (2 * k))
    scale = 1 << k
    return (Q(n, scale), Q(n + 1, scale))


def to_float(x: ExactLike, precision_bits: int = 53) -> tuple[float, float]:
    """Convert an exact number to float with a guaranteed absolute error bound.

    The bound is derived from a rational enclosure of sqrt(d) (width
    2**-(precision_bits+8)) plus one ulp of slack for the final rounding, so
    the true value always lies within [value - bound, value + bound].
    """
    if precision_bits < 16:
        raise ValueError("precision_bits must be at least 16")
    x = QuadNum._coerce(x)
    if x.b == 0:
        f = float(x.a)
        if Q(f) == x.a:
            return (f, 0.0)
        return (f, math.ulp(f) if f else math.ulp(0.0))
    lo, hi = x.enclosure(precision_bits + 8)
    mid = (lo + hi) / 2
    f = float(mid)
    half_width = (hi - lo) / 2
    bound = float(half_width) + math.ulp(f if f else 1.0)
    return (f, bound)


def omega(i: int) -> QuadNum:
    """Positive root of i*(w + w^2) = 1, i.e. (sqrt(i*(i+4)) - i) / (2i).

    This is the limit of consecutive-term ratios of the order-i block
    sequence and the per-step contraction factor of the stationary
    odd-block policy.
    """
    if i < 1:
        raise ValueError("block order must be >= 1")
    d = i * (i + 4)
    return QuadNum(Q(-1, 2), Q(1, 2 * i), d)


_EXACT_RE = re.compile(
    r"""^\s*(?P<an>-?\d+)\s*(?:/\s*(?P<ad>\d+))?\s*
        (?:\+\s*(?P<bn>-?\d+)\s*(?:/\s*(?P<bd>\d+))?\s*\*\s*sqrt\(\s*(?P<d>\d+)\s*\))?\s*$""",
    re.VERBOSE,
)


def format_exact(x: ExactLike) -> str:
    """Serialize as ``a/b + c/e*sqrt(d)`` (or ``a/b`` when purely rational)."""
    x = QuadNum._coerce(x)
    a = f"{x.a.numerator}/{x.a.denominator}"
    if x.b == 0:
        return a
    return f"{a} + {x.b.numerator}/{x.b.denominator}*sqrt({x.d})"


def parse_exact(text: str) -> QuadNum:
    m = _EXACT_RE.match(text)
    if not m:
        raise ValueError(f"not an exact-number string: {text!r}")
    a = Q(int(m.group("an")), int(m.group("ad") or 1))
    if m.group("bn") is None:
        return QuadNum(a)
    b = Q(int(m.group("bn")), int(m.group("bd") or 1))
    return QuadNum(a, b, int(m.group("d")))


def as_exact(x: ExactLike | float | str) -> QuadNum:
    """Lenient constructor used at API boundaries (accepts exact strings)."""
    if isinstance(x, str):
        return parse_exact(x)
    if isinstance(x, float):
        if not math.isfinite(x):
            raise ValueError("non-finite value")
        return QuadNum(Q(x))
    return QuadNum._coerce(x)
