"""Exact Gauss-measure arithmetic in log-rational form.

A cylinder measure is log2 of a rational > 1, so it is stored as that
rational (the "arg") and every comparison or sum is exact integer work:
adding measures multiplies args, comparing measures cross-multiplies.
Floats appear only when rendering reports.
"""

from __future__ import annotations

import enum
import itertools
import math
from dataclasses import dataclass
from fractions import Fraction

from .cfcore import Word, cylinder_interval, reverse, value_of

_ONE = Fraction(1)


class LogRational:
    """A measure value log2(arg) with exact rational arg >= 1."""

    __slots__ = ("arg",)

    def __init__(self, arg: Fraction | int):
        arg = Fraction(arg)
        if arg < 1:
            raise ValueError(f"measure argument must be >= 1, got {arg}")
        self.arg = arg

    @classmethod
    def zero(cls) -> "LogRational":
        return cls(_ONE)

    @classmethod
    def of_ratio(cls, num: int, den: int) -> "LogRational":
        return cls(Fraction(num, den))

    def __add__(self, other: "LogRational") -> "LogRational":
        return LogRational(self.arg * other.arg)

    def __sub__(self, other: "LogRational") -> "LogRational":
        if other.arg > self.arg:
            raise ValueError("measure difference would be negative")
        return LogRational(self.arg / other.arg)

    def __mul__(self, n: int) -> "LogRational":
        if not isinstance(n, int) or n < 0:
            return NotImplemented
        return LogRational(self.arg**n)

    __rmul__ = __mul__

    def __eq__(self, other: object) -> bool:
        return isinstance(other, LogRational) and self.arg == other.arg

    def __lt__(self, other: "LogRational") -> bool:
        return self.arg < other.arg

    def __le__(self, other: "LogRational") -> bool:
        return self.arg <= other.arg

    def __gt__(self, other: "LogRational") -> bool:
        return self.arg > other.arg

    def __ge__(self, other: "LogRational") -> bool:
        return self.arg >= other.arg

    def __hash__(self) -> int:
        return hash(("LogRational", self.arg))

    @property
    def float(self) -> float:
        # log2 on the integer parts stays finite for arbitrarily large args.
        return math.log2(self.arg.numerator) - math.log2(self.arg.denominator)

    def __repr__(self) -> str:
        return f"log2({self.arg.numerator}/{self.arg.denominator})"


MEASURE_FULL = LogRational(Fraction(2))  # the whole space, log2(2) = 1


def measure_of_cylinder(w: Word) -> LogRational:
    """gamma(C_w) = log2((1 + hi)/(1 + lo)) over the cylinder's endpoints.

    This is the closed form of (1/ln 2) * integral of dx/(1+x) over the
    cylinder interval.
    """
    iv = cylinder_interval(w)
    return LogRational((1 + iv.hi) / (1 + iv.lo))


def measure_sum(a: LogRational, b: LogRational) -> LogRational:
    """Measure of a disjoint union: args multiply."""
    return a + b


def measure_compare(a: LogRational, b: LogRational) -> int:
    """-1, 0, or 1 by exact cross-multiplication of the args."""
    if a.arg < b.arg:
        return -1
    if a.arg > b.arg:
        return 1
    return 0


def digit_tail_measure(n_max: int) -> LogRational:
    """gamma of {x : first digit > n_max}, i.e. of (0, 1/(n_max+1))."""
    if n_max < 1:
        raise ValueError("need n_max >= 1")
    return LogRational(Fraction(n_max + 2, n_max + 1))


def unenumerated_children_measure(w: Word, n_max: int) -> LogRational:
    """Exact measure of {x in C_w : digit |w|+1 of x exceeds n_max}.

    That set is the interval between value(w . (n_max+1)) and value(w),
    so its measure comes straight from the endpoint arithmetic.
    """
    a = value_of(w)
    b = value_of(w + (n_max + 1,))
    lo, hi = (a, b) if a < b else (b, a)
    return LogRational((1 + hi) / (1 + lo))


class PairVerdict(enum.Enum):
    STRICT_GREATER = "STRICT_GREATER"
    PAIRED_EQUAL = "PAIRED_EQUAL"


class MeasureContradiction(AssertionError):
    """An exhaustively checked inequality failed; treat as fatal."""


def pairwise_cylinder_inequality(n: Word) -> PairVerdict:
    """Compare gamma(C_[1,n,1]) against gamma(C_[1,1,n]) for one padding word n.

    Last digit >= 2: the left measure must be strictly greater.  Last digit
    1: with n = m + (1,), the term pairs off exactly against its reversal,
    gamma(C_[1,m,1,1]) = gamma(C_[1,1,rev(m),1]).  Any other outcome
    contradicts the verified inequality family and raises.
    """
    if len(n) == 0:
        raise ValueError("padding word must be non-empty")
    if n[-1] >= 2:
        left = measure_of_cylinder((1,) + n + (1,))
        right = measure_of_cylinder((1, 1) + n)
        if measure_compare(left, right) != 1:
            raise MeasureContradiction(
                f"expected gamma(C_[1,{n},1]) > gamma(C_[1,1,{n}]), got {left} vs {right}"
            )
        return PairVerdict.STRICT_GREATER
    m = n[:-1]
    left = measure_of_cylinder((1,) + m + (1, 1))
    right = measure_of_cylinder((1, 1) + reverse(m) + (1,))
    if left != right:
        raise MeasureContradiction(
            f"expected reversal-paired equality for n={n}, got {left} vs {right}"
        )
    return PairVerdict.PAIRED_EQUAL


def reversal_equality_check(w: Word) -> bool:
    """True iff gamma(C_w) == gamma(C_reversed(w)) exactly."""
    return measure_of_cylinder(w) == measure_of_cylinder(reverse(w))


def _round_down(x: Fraction, bits: int) -> Fraction:
    return Fraction(x.numerator * (1 << bits) // x.denominator, 1 << bits)


def _round_up(x: Fraction, bits: int) -> Fraction:
    scaled = x.numerator * (1 << bits)
    q, r = divmod(scaled, x.denominator)
    return Fraction(q + (1 if r else 0), 1 << bits)


def _outward_float(x: float, direction: int) -> float:
    # a couple of ulps absorbs the log2 rounding of huge integer args
    y = x
    for _ in range(2):
        y = math.nextafter(y, math.copysign(math.inf, direction))
    return y


@dataclass(frozen=True)
class BoundedMeasure:
    """An exact lower bound plus a rigorous bound on the omitted mass.

    The true value lies in [lower, lower + tail_bound].
    """

    lower: LogRational
    tail_bound: LogRational

    @property
    def upper(self) -> LogRational:
        return self.lower + self.tail_bound

    @property
    def float_value(self) -> float:
        return self.lower.float

    def bracket(self) -> tuple[float, float]:
        """Outward-rounded float bracket [lo, hi] containing the true value."""
        return (_outward_float(self.lower.float, -1), _outward_float(self.upper.float, +1))

    def contains(self, x: float) -> bool:
        lo, hi = self.bracket()
        return lo <= x <= hi


COMPRESS_BITS = 256


def joint_pattern_measure(
    k: int, cap: int, compress: bool = False, jobs: int = 1
) -> BoundedMeasure:
    """Bracket gamma(C_[1] intersect T^-k C_[1]) by enumerating middle digits.

    lower sums gamma(C_[1,n1..n_{k-1},1]) over all middles in {1..cap}^(k-1)
    (lexicographic order); the omitted mass is union-bounded by (k-1) copies
    of the digit tail at cap, valid because the shift preserves the measure.

    compress=True keeps the accumulated arg as an outward bracket with
    denominators capped at 2**COMPRESS_BITS instead of exactly; the bracket
    invariant is preserved, only tightness is lost.  jobs > 1 shards the
    first middle digit; rational multiplication commutes, so the result is
    identical for any job count.
    """
    if k < 2:
        raise ValueError("need k >= 2")
    if cap < 1:
        raise ValueError("need cap >= 1")

    def shard_product(first_digits: range) -> Fraction:
        prod = _ONE
        for n1 in first_digits:
            for rest in itertools.product(range(1, cap + 1), repeat=k - 2):
                prod *= measure_of_cylinder((1, n1) + rest + (1,)).arg
        return prod

    if jobs > 1:
        from concurrent.futures import ThreadPoolExecutor

        bounds = [(i * cap) // jobs for i in range(jobs + 1)]
        shards = [range(lo + 1, hi + 1) for lo, hi in zip(bounds, bounds[1:])]
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            parts = list(pool.map(shard_product, shards))
        exact_lo = exact_hi = _ONE
        for part in parts:
            exact_lo *= part
        exact_hi = exact_lo
    else:
        if compress:
            exact_lo = exact_hi = _ONE
            for middle in itertools.product(range(1, cap + 1), repeat=k - 1):
                term = measure_of_cylinder((1,) + middle + (1,)).arg
                exact_lo = _round_down(exact_lo * term, COMPRESS_BITS)
                exact_hi = _round_up(exact_hi * term, COMPRESS_BITS)
        else:
            exact_lo = exact_hi = shard_product(range(1, cap + 1))

    tail_arg = Fraction(cap + 2, cap + 1) ** (k - 1)
    # any rounding slack on the lower bound is folded into the tail bound
    tail_arg *= exact_hi / exact_lo
    return BoundedMeasure(LogRational(exact_lo), LogRational(tail_arg))
