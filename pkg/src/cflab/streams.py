"""Pull-based digit sources: rationals, periodic words, interval-refined reals.

A DigitSource is a single-consumer iterator of partial quotients with a bit
of provenance (kind, label, emitted count).  Construction parameters fully
determine the digit sequence, seeds included.  Sources are not safe for
concurrent pulls; hand one off between workers or build independent ones.

Interval-refined sources never emit an uncertified digit: a digit comes out
only when both interval endpoints agree on floor(1/x), and the stream ends
with `precision_exhausted` set the moment they disagree.  A wrong silent
digit is the failure mode all of this is built to prevent.
"""

from __future__ import annotations

import math
import random
from fractions import Fraction
from typing import Iterator

from .cfcore import Word, cf_of_rational, format_word, word

RANDOM_BLOCK_BITS = 4096


class DigitSource:
    """Stateful digit iterator; see module docstring for the contract."""

    __slots__ = ("kind", "label", "emitted", "precision_exhausted", "_it")

    def __init__(self, kind: str, label: str):
        self.kind = kind
        self.label = label
        self.emitted = 0
        self.precision_exhausted = False
        self._it: Iterator[int] | None = None

    def _bind(self, it: Iterator[int]) -> "DigitSource":
        self._it = it
        return self

    def __iter__(self) -> "DigitSource":
        return self

    def __next__(self) -> int:
        digit = next(self._it)
        self.emitted += 1
        return digit

    def take(self, n: int) -> list[int]:
        """Pull up to n digits (fewer if the source ends first)."""
        out = []
        for digit in self:
            out.append(digit)
            if len(out) >= n:
                break
        return out

    def __repr__(self) -> str:
        return f"DigitSource({self.label!r}, emitted={self.emitted})"


def _interval_digits(lo_n: int, lo_d: int, hi_n: int, hi_d: int) -> Iterator[int]:
    """Digits certified for every x in [lo_n/lo_d, hi_n/hi_d] within (0, 1].

    Gauss step: digit a = floor(1/x); both endpoints must agree on a.  The
    refinement x -> 1/x - a swaps orientation, so the endpoint pairs trade
    places each round.  Returns (via StopIteration) when no further digit is
    certifiable: the lower endpoint reached 0, or the endpoints disagree.
    """
    while True:
        if lo_n <= 0:
            return
        a = hi_d // hi_n
        if a < 1 or a != lo_d // lo_n:
            return
        yield a
        lo_n, lo_d, hi_n, hi_d = hi_d - a * hi_n, hi_n, lo_d - a * lo_n, lo_n


def source_rational(num: int, den: int) -> DigitSource:
    """Finite source emitting the canonical expansion of num/den."""
    digits = cf_of_rational(num, den)
    return DigitSource("rational", f"rational:{num}/{den}")._bind(iter(digits))


def source_periodic(prefix: Word, period: Word) -> DigitSource:
    """Infinite source: prefix once, then period forever."""
    prefix = word(prefix)
    period = word(period)
    if len(period) == 0:
        raise ValueError("period must be non-empty")

    def gen() -> Iterator[int]:
        yield from prefix
        while True:
            yield from period

    label = f"periodic:{format_word(prefix)};{format_word(period)}"
    return DigitSource("periodic", label)._bind(gen())


def source_decimal_interval(decimal: str, ulp_exponent: int) -> DigitSource:
    """Precision-limited source for a decimal measurement of a real in (0,1).

    The value is only known to lie in [d - 10**ulp_exponent,
    d + 10**ulp_exponent] intersected with (0,1); digits are emitted while
    the whole interval agrees on them, then the source marks itself
    precision-exhausted and stops.
    """
    try:
        d = Fraction(decimal.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"bad decimal text {decimal!r}: {exc}") from None
    if not 0 < d < 1:
        raise ValueError(f"decimal value must be in (0,1), got {d}")
    ulp = Fraction(10) ** ulp_exponent
    lo = max(d - ulp, Fraction(0))
    hi = min(d + ulp, Fraction(1))

    src = DigitSource("decimal-interval", f"decimal:{decimal}:e{ulp_exponent}")

    def gen() -> Iterator[int]:
        yield from _interval_digits(lo.numerator, lo.denominator, hi.numerator, hi.denominator)
        src.precision_exhausted = True

    return src._bind(gen())


def source_concat_normal() -> DigitSource:
    """Infinite source concatenating the expansions of all reduced rationals.

    Enumeration: denominators q = 2, 3, 4, ... and within each q the
    numerators p = 1..q-1 with gcd(p, q) = 1, ascending.  Deterministic by
    construction; its statistics are validated empirically, not proven.
    """

    def gen() -> Iterator[int]:
        q = 2
        while True:
            for p in range(1, q):
                if math.gcd(p, q) == 1:
                    yield from cf_of_rational(p, q)
            q += 1

    return DigitSource("concat-normal", "concat-normal")._bind(gen())


def source_random_real(seed: int, block_bits: int = RANDOM_BLOCK_BITS) -> DigitSource:
    """Infinite seeded source of digits distributed like those of a random real.

    Draws counter-keyed blocks of uniform bits (block j is keyed by
    (seed, j)), treats each block as a dyadic interval of width
    2**-block_bits, and emits that interval's certified digits by the same
    endpoints-agree rule as the decimal source.  When a block's precision is
    spent the next block takes over, so the stream itself never runs dry.
    """
    if block_bits < 64:
        raise ValueError("block_bits must be >= 64")

    def gen() -> Iterator[int]:
        block = 0
        scale = 1 << block_bits
        while True:
            m = random.Random((seed << 64) + block).getrandbits(block_bits)
            yield from _interval_digits(m, scale, m + 1, scale)
            block += 1

    return DigitSource("random-real", f"random:seed={seed}")._bind(gen())


def limit(source: DigitSource, n: int) -> DigitSource:
    """A view of `source` that ends after at most n digits."""
    if n < 0:
        raise ValueError("need n >= 0")
    out = DigitSource(source.kind, source.label)

    def gen() -> Iterator[int]:
        for _ in range(n):
            try:
                yield next(source)
            except StopIteration:
                break
        out.precision_exhausted = source.precision_exhausted

    return out._bind(gen())


def parse_source_spec(text: str, seed: int | None = None) -> DigitSource:
    """Build a source from its CLI spec string.

    Forms: `rational:7/16`, `periodic:<prefix>;<period>` (compact
    `periodic:,2` splits on the first comma), `decimal:0.618:e-10`,
    `concat-normal`, `random:seed=42` (or bare `random` with an external
    seed).
    """
    text = text.strip()
    kind, _, payload = text.partition(":")
    if kind == "rational":
        frac = Fraction(payload)
        return source_rational(frac.numerator, frac.denominator)
    if kind == "periodic":
        if ";" in payload:
            prefix_text, _, period_text = payload.partition(";")
        else:
            prefix_text, _, period_text = payload.partition(",")
        from .cfcore import parse_word

        prefix = parse_word(prefix_text, allow_empty=True)
        period = parse_word(period_text, allow_empty=True)
        return source_periodic(prefix, period)
    if kind == "decimal":
        decimal_text, sep, exp_text = payload.rpartition(":")
        if not sep:
            raise ValueError("decimal source needs an exponent, e.g. decimal:0.5:e-10")
        exp_text = exp_text.lstrip("eE")
        return source_decimal_interval(decimal_text, int(exp_text))
    if kind == "concat-normal" and not payload:
        return source_concat_normal()
    if kind == "random":
        if payload.startswith("seed="):
            return source_random_real(int(payload[len("seed=") :]))
        if not payload and seed is not None:
            return source_random_real(seed)
        raise ValueError("random source needs seed=N (or a --seed flag)")
    raise ValueError(f"unrecognized source spec {text!r}")
