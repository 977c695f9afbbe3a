"""Exact continued-fraction words, convergents, values, and cylinder intervals.

A word is a finite tuple of partial quotients (a1, ..., an), every digit >= 1,
standing for the continued fraction [0; a1, ..., an] in (0, 1].  All
arithmetic is over exact rationals; nothing here touches floating point.
Every function is pure, so concurrent use needs no locking.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from typing import Iterable, Iterator, NamedTuple

Word = tuple[int, ...]


class Convergent(NamedTuple):
    p: int
    q: int
    index: int

    @property
    def value(self) -> Fraction:
        return Fraction(self.p, self.q)


class CylinderInterval(NamedTuple):
    """Open interval of reals whose expansion starts with `word`.

    Endpoints are [0; a1..an] and [0; a1..an+1]; which one is the word's own
    value depends on the parity of the word length (odd length puts the
    word's value at the top).  hi - lo = 1/(q_n * (q_n + q_{n-1})).
    """

    word: Word
    lo: Fraction
    hi: Fraction

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo


def word(digits: Iterable[int]) -> Word:
    """Validate and freeze a digit sequence into a Word."""
    w = tuple(digits)
    for d in w:
        if not isinstance(d, int) or d < 1:
            raise ValueError(f"partial quotients must be integers >= 1, got {d!r}")
    return w


def parse_word(text: str, allow_empty: bool = False) -> Word:
    """Parse the comma-separated text form, e.g. '1,2,3'."""
    text = text.strip()
    if not text:
        if allow_empty:
            return ()
        raise ValueError("empty word")
    try:
        return word(int(part) for part in text.split(","))
    except ValueError as exc:
        raise ValueError(f"bad word text {text!r}: {exc}") from None


def format_word(w: Word) -> str:
    return ",".join(str(d) for d in w)


def parse_rational(text: str) -> Fraction:
    """Parse 'p/q' in lowest terms (plain integers are also accepted)."""
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"bad rational text {text!r}: {exc}") from None


def format_rational(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def reverse(w: Word) -> Word:
    return w[::-1]


def _require_nonempty(w: Word) -> None:
    if len(w) == 0:
        raise ValueError("operation undefined for the empty word")


def cf_of_rational(num: int, den: int) -> Word:
    """Expand num/den with 0 < num < den into its canonical word.

    Euclidean expansion; canonical means the last digit is >= 2 (the
    [..,a,1] == [..,a+1] ambiguity is resolved toward the shorter form),
    which the remainder recursion yields automatically.
    """
    if num <= 0 or den <= 0:
        raise ValueError(f"need positive numerator and denominator, got {num}/{den}")
    if num >= den:
        raise ValueError(f"need num < den for a value in (0,1), got {num}/{den}")
    digits = []
    a, b = den, num
    while b:
        digits.append(a // b)
        a, b = b, a % b
    return tuple(digits)


def convergents(w: Word) -> list[Convergent]:
    """All convergents p_n/q_n of [0; w] via the standard recurrence.

    Seeds p0=0, q0=1, p_{-1}=1, q_{-1}=0; then p_n = a_n p_{n-1} + p_{n-2}
    and likewise for q.  The final convergent equals value_of(w).
    """
    _require_nonempty(w)
    out = []
    p_prev, q_prev, p, q = 1, 0, 0, 1
    for i, a in enumerate(w, start=1):
        p_prev, q_prev, p, q = p, q, a * p + p_prev, a * q + q_prev
        out.append(Convergent(p, q, i))
    return out


def value_of(w: Word) -> Fraction:
    """Exact value of [0; w] in (0, 1]."""
    _require_nonempty(w)
    p_prev, q_prev, p, q = 1, 0, 0, 1
    for a in w:
        p_prev, q_prev, p, q = p, q, a * p + p_prev, a * q + q_prev
    return Fraction(p, q)


def _bumped(w: Word) -> Word:
    return w[:-1] + (w[-1] + 1,)


def cylinder_interval(w: Word) -> CylinderInterval:
    """Exact endpoints of the cylinder of reals starting with w."""
    _require_nonempty(w)
    own = value_of(w)
    bumped = value_of(_bumped(w))
    if len(w) % 2:
        lo, hi = bumped, own
    else:
        lo, hi = own, bumped
    return CylinderInterval(w, lo, hi)


def denominator_dominance(n: Word) -> bool:
    """Check q([0;1,1,n1..nk]) > q([0;1,n1..nk,1]) for a word with last digit >= 2.

    The inequality must hold for every admissible word; the function exists
    so that the claim can be machine-checked exhaustively rather than trusted.
    """
    _require_nonempty(n)
    if n[-1] < 2:
        raise ValueError("last digit must be >= 2")
    q_left = value_of((1, 1) + n).denominator
    q_right = value_of((1,) + n + (1,)).denominator
    return q_left > q_right


def iter_words(max_digit: int, max_len: int, min_len: int = 1) -> Iterator[Word]:
    """Enumerate all words with digits in 1..max_digit and lengths min_len..max_len.

    Order is by length, then lexicographic; deterministic for sharded
    verification runs.
    """
    if max_digit < 1:
        return
    for length in range(min_len, max_len + 1):
        yield from itertools.product(range(1, max_digit + 1), repeat=length)
