"""Exhaustive exact verification suites over bounded word families.

Each suite machine-checks an inequality or identity family that the rest of
the package relies on, over every word within the given digit/length
bounds.  A single counterexample is reported with the offending word; none
is ever expected.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

from .cfcore import Word, denominator_dominance, format_word, iter_words
from .measure import (
    BoundedMeasure,
    MeasureContradiction,
    PairVerdict,
    joint_pattern_measure,
    measure_of_cylinder,
    pairwise_cylinder_inequality,
    reversal_equality_check,
)

SUITES = ("reversal", "dominance", "pairwise", "joint-k2")


@dataclass(frozen=True)
class VerifyResult:
    suite: str
    passed: bool
    checked: int
    counterexample: Word | None
    detail: str

    def summary(self) -> str:
        status = "pass" if self.passed else "FAIL"
        line = f"{self.suite}: {status} ({self.checked} cases checked; {self.detail})"
        if self.counterexample is not None:
            line += f"; counterexample {format_word(self.counterexample)}"
        return line


def _sharded_scan(words, check, jobs: int):
    """Run `check` over words, returning (checked, first failing word).

    Shards preserve enumeration order, so the reported counterexample is
    the same for any job count.
    """
    words = list(words)
    if jobs <= 1:
        for w in words:
            if not check(w):
                return len(words), w
        return len(words), None

    bounds = [(i * len(words)) // jobs for i in range(jobs + 1)]
    shards = [words[lo:hi] for lo, hi in zip(bounds, bounds[1:])]

    def scan(shard):
        for w in shard:
            if not check(w):
                return w
        return None

    with ThreadPoolExecutor(max_workers=jobs) as pool:
        results = list(pool.map(scan, shards))
    for hit in results:
        if hit is not None:
            return len(words), hit
    return len(words), None


def run_reversal(max_digit: int, max_len: int, jobs: int = 1) -> VerifyResult:
    """gamma(C_w) == gamma(C_reversed(w)) for every word in the family."""
    checked, bad = _sharded_scan(
        iter_words(max_digit, max_len), reversal_equality_check, jobs
    )
    return VerifyResult(
        "reversal",
        bad is None,
        checked,
        bad,
        f"digits <= {max_digit}, length <= {max_len}",
    )


def run_dominance(max_digit: int, max_len: int, jobs: int = 1) -> VerifyResult:
    """Denominator dominance for every word with last digit >= 2."""
    words = [w for w in iter_words(max_digit, max_len) if w[-1] >= 2]
    checked, bad = _sharded_scan(words, denominator_dominance, jobs)
    return VerifyResult(
        "dominance",
        bad is None,
        checked,
        bad,
        f"digits <= {max_digit}, length <= {max_len}, last digit >= 2",
    )


def run_pairwise(max_digit: int, max_len: int, jobs: int = 1) -> VerifyResult:
    """Strict inequality / reversal pairing verdicts for every padding word."""

    def check(n: Word) -> bool:
        expected = (
            PairVerdict.STRICT_GREATER if n[-1] >= 2 else PairVerdict.PAIRED_EQUAL
        )
        try:
            return pairwise_cylinder_inequality(n) is expected
        except MeasureContradiction:
            return False

    checked, bad = _sharded_scan(iter_words(max_digit, max_len), check, jobs)
    return VerifyResult(
        "pairwise",
        bad is None,
        checked,
        bad,
        f"digits <= {max_digit}, length <= {max_len}",
    )


def joint_k2_oracle() -> float:
    """Closed form for the k=2 joint measure.

    The term for middle digit n has arg (2n+3)^2/((2n+3)^2 - 1); the full
    product telescopes against the Wallis product to 32/(9*pi).
    """
    return math.log2(32 / (9 * math.pi))


@dataclass(frozen=True)
class JointK2Result:
    passed: bool
    cap: int
    measure: BoundedMeasure
    oracle: float
    gamma_11_float: float
    bracket_contains_oracle: bool
    exceeds_gamma_11: bool
    detail: str

    def summary(self) -> str:
        status = "pass" if self.passed else "FAIL"
        lo, hi = self.measure.bracket()
        return (
            f"joint-k2: {status} (cap {self.cap}; bracket [{lo:.4f}, {hi:.4f}] "
            f"vs oracle {self.oracle:.5f}; gamma(C_11) = {self.gamma_11_float:.4f}; "
            f"{self.detail})"
        )


def run_joint_k2(cap: int = 1000, jobs: int = 1) -> JointK2Result:
    """Bracket the k=2 joint measure and check it against the closed form.

    Passes iff the bracket contains the oracle value and the exact lower
    bound already exceeds gamma(C_[1,1]) by rational comparison.
    """
    bm = joint_pattern_measure(2, cap, jobs=jobs)
    oracle = joint_k2_oracle()
    gamma_11 = measure_of_cylinder((1, 1))
    contains = bm.contains(oracle)
    exceeds = bm.lower > gamma_11
    detail = (
        f"lower {bm.float_value:.6f}, tail {bm.tail_bound.float:.6f}, "
        f"exceeds gamma(C_11): {exceeds}"
    )
    return JointK2Result(
        passed=contains and exceeds,
        cap=cap,
        measure=bm,
        oracle=oracle,
        gamma_11_float=gamma_11.float,
        bracket_contains_oracle=contains,
        exceeds_gamma_11=exceeds,
        detail=detail,
    )
