"""Acceptance gate: every criterion at its stated tolerance, one line each.

Run with `pytest tests/test_acceptance.py -v -s` to see the per-criterion
PASS/FAIL lines.  Heavy digit buffers and reports are computed once and
shared; each criterion still times the work it owns against its budget.
"""

import json
import math
import random
import time
from fractions import Fraction

from cflab import (
    ModeDescriptor,
    count_aligned,
    count_chunked,
    count_disjoint,
    count_overlapping,
    measure_of_cylinder,
    source_concat_normal,
)
from cflab.experiments import ExperimentConfig, run_pillai, run_subsequence
from cflab.reports import render_report
from cflab.verify import run_dominance, run_joint_k2, run_pairwise, run_reversal

GAMMA_11 = 0.15200  # gamma(C_[1,1]) to the tolerance grain used below
JOINT_K2 = 0.17867  # stated target for the k=2 joint measure


def _check(cid: str, ok: bool, detail: str) -> None:
    print(f"[{'PASS' if ok else 'FAIL'}] criterion {cid}: {detail}")
    assert ok, f"criterion {cid}: {detail}"


_cache: dict = {}


def _pillai_report(jobs: int) -> tuple[dict, bytes]:
    key = ("pillai", jobs)
    if key not in _cache:
        config = ExperimentConfig(
            source="random:seed=42",
            n=1_000_000,
            patterns=[(1,), (2,), (1, 1), (1, 2)],
            jobs=jobs,
        )
        report = run_pillai(config)
        _cache[key] = (report, render_report(report, "json"))
    return _cache[key]


def _subsequence_report(b: int, jobs: int) -> tuple[dict, bytes]:
    key = ("subsequence", b, jobs)
    if key not in _cache:
        config = ExperimentConfig(
            source="random:seed=7", n=2_000_000, b=b, k=2, jobs=jobs
        )
        report = run_subsequence(config)
        _cache[key] = (report, render_report(report, "json"))
    return _cache[key]


def _seeded_streams() -> list[tuple[list[int], tuple, int, int]]:
    if "streams" not in _cache:
        rng = random.Random(4242)
        streams = []
        for _ in range(1000):
            n = rng.randint(1, 200)
            digits = [rng.randint(1, 4) for _ in range(n)]
            k = rng.randint(1, 3)
            w = tuple(rng.randint(1, 4) for _ in range(k))
            stride = rng.randint(k, k + 3)
            offset = rng.randint(0, stride - k)
            streams.append((digits, w, stride, offset))
        _cache["streams"] = streams
    return _cache["streams"]


def _counting_report(jobs: int) -> bytes:
    rows = []
    for digits, w, stride, offset in _seeded_streams():
        rows.append(
            {
                "n": len(digits),
                "pattern": ",".join(map(str, w)),
                "overlap": count_chunked(digits, w, ModeDescriptor.overlap(), jobs),
                "disjoint": count_chunked(digits, w, ModeDescriptor.disjoint(), jobs),
                "aligned": count_chunked(
                    digits, w, ModeDescriptor.aligned(stride, offset), jobs
                ),
                "stride": stride,
                "offset": offset,
            }
        )
    return (json.dumps(rows, indent=2) + "\n").encode()


def test_criterion_1_reversal_equality():
    t0 = time.monotonic()
    result = run_reversal(max_digit=4, max_len=5)
    dt = time.monotonic() - t0
    ok = result.passed and result.checked >= 1360 and dt < 10
    _check("1", ok, f"reversal exhaustive, {result.checked} words, {dt:.2f}s (< 10s)")


def test_criterion_2_denominator_dominance():
    t0 = time.monotonic()
    result = run_dominance(max_digit=5, max_len=4)
    dt = time.monotonic() - t0
    ok = result.passed and dt < 10
    _check("2", ok, f"dominance exhaustive, {result.checked} words, {dt:.2f}s (< 10s)")


def test_criterion_3_pairwise_cylinder_inequality():
    t0 = time.monotonic()
    result = run_pairwise(max_digit=5, max_len=3)
    dt = time.monotonic() - t0
    ok = result.passed and dt < 30
    _check("3", ok, f"pairwise exhaustive, {result.checked} words, {dt:.2f}s (< 30s)")


def test_criterion_4_joint_k2_direct_calculation():
    t0 = time.monotonic()
    result = run_joint_k2(cap=1000)
    dt = time.monotonic() - t0
    lo, hi = result.measure.bracket()
    oracle = math.log2(32 / (9 * math.pi))
    ok = (
        lo <= oracle <= hi
        and (hi - lo) < 0.002
        and result.exceeds_gamma_11
        and dt < 10
    )
    _check(
        "4",
        ok,
        f"joint k=2 bracket [{lo:.5f}, {hi:.5f}] contains {oracle:.5f}, "
        f"width {hi - lo:.5f} < 0.002, lower > gamma(C_11) exactly, {dt:.2f}s (< 10s)",
    )


def test_criterion_5_counting_oracles():
    def naive_overlap(digits, w):
        k = len(w)
        return sum(
            1 for i in range(len(digits) - k + 1) if tuple(digits[i : i + k]) == w
        )

    def naive_aligned(digits, stride, offset, w):
        k = len(w)
        return sum(
            1
            for i in range(len(digits))
            if stride * i + offset + k <= len(digits)
            and tuple(digits[stride * i + offset : stride * i + offset + k]) == w
        )

    mismatches = 0
    for digits, w, stride, offset in _seeded_streams():
        k = len(w)
        if count_overlapping(digits, w) != naive_overlap(digits, w):
            mismatches += 1
        if count_disjoint(digits, w) != naive_aligned(digits, k, 0, w):
            mismatches += 1
        if count_aligned(digits, stride, offset, w) != naive_aligned(
            digits, stride, offset, w
        ):
            mismatches += 1
    _check(
        "5",
        mismatches == 0,
        f"1000 seeded streams, overlap/disjoint/aligned vs naive rescan, "
        f"{mismatches} mismatches",
    )


def test_criterion_6_pillai_equivalence_empirical():
    t0 = time.monotonic()
    report, _ = _pillai_report(jobs=1)
    dt = time.monotonic() - t0
    worst = 0.0
    for row in report["summary"]:
        worst = max(
            worst,
            row["dev_overlap_gamma"],
            row["dev_disjoint_gamma"],
            row["dev_overlap_disjoint"],
        )
    ok = report["verdict"] == "CONSISTENT" and worst < 0.005 and dt < 120
    _check(
        "6",
        ok,
        f"seed 42, n=10^6, patterns 1/2/1,1/1,2: worst deviation {worst:.5f} < 0.005, "
        f"{dt:.1f}s (< 120s)",
    )


def test_criterion_7_subsequence_non_normality():
    t0 = time.monotonic()
    rep1, _ = _subsequence_report(b=1, jobs=1)
    rep3, _ = _subsequence_report(b=3, jobs=1)
    dt = time.monotonic() - t0
    f1 = rep1["summary"]["selected_freq"]
    ok = (
        rep1["selected_n"] == 1_000_000
        and abs(f1 - JOINT_K2) < 0.01
        and abs(f1 - GAMMA_11) > 0.015
        and rep1["verdict"] == "NON_NORMAL"
        and rep3["verdict"] == "NON_NORMAL"
        and dt < 240
    )
    _check(
        "7",
        ok,
        f"seed 7, k=2: freq(1,1)={f1:.5f}, |f-{JOINT_K2}|={abs(f1 - JOINT_K2):.5f} < 0.01, "
        f"|f-{GAMMA_11}|={abs(f1 - GAMMA_11):.5f} > 0.015, verdicts NON_NORMAL for b=1 and b=3, "
        f"{dt:.1f}s (< 240s)",
    )


def test_criterion_8_periodic_negative_control():
    config = ExperimentConfig(source="periodic:,2", n=100_000, patterns=[(2,)])
    report = run_pillai(config)
    row = next(r for r in report["rows"] if r["n"] == 100_000 and r["mode"] == "overlap")
    exact = Fraction(row["freq_num"], row["freq_den"])
    gamma = measure_of_cylinder((2,)).float
    ok = (
        exact == 1
        and report["verdict"] == "NON_NORMAL"
        and abs(gamma - 0.1699) < 5e-5
    )
    _check(
        "8",
        ok,
        f"periodic 2,2,2,...: overlap freq of [2] = {exact} exactly, "
        f"gamma(C_2) = {gamma:.4f}, flagged {report['verdict']}",
    )


def test_criterion_9_concat_normal_generator():
    digits = source_concat_normal().take(1_000_000)
    f1 = digits.count(1) / len(digits)
    f11 = count_overlapping(digits, (1, 1)) / len(digits)
    ok = abs(f1 - 0.4150) < 0.03 and abs(f11 - 0.1520) < 0.03
    _check(
        "9",
        ok,
        f"concat stream, n=10^6: freq(1)={f1:.4f} (|dev|={abs(f1 - 0.4150):.4f} < 0.03), "
        f"freq(1,1)={f11:.4f} (|dev|={abs(f11 - 0.1520):.4f} < 0.03)",
    )


def test_criterion_10_parallel_determinism():
    counting_1 = _counting_report(jobs=1)
    counting_8 = _counting_report(jobs=8)
    _, pillai_1 = _pillai_report(jobs=1)
    _, pillai_8 = _pillai_report(jobs=8)
    _, sub_1 = _subsequence_report(b=1, jobs=1)
    _, sub_8 = _subsequence_report(b=1, jobs=8)
    ok = counting_1 == counting_8 and pillai_1 == pillai_8 and sub_1 == sub_8
    _check(
        "10",
        ok,
        "counting/pillai/subsequence reports byte-identical with jobs=1 and jobs=8 "
        f"({len(counting_1)}+{len(pillai_1)}+{len(sub_1)} bytes compared)",
    )
