"""Exact continued-fraction cylinder arithmetic and block-frequency experiments."""

from .cfcore import (
    Convergent,
    CylinderInterval,
    Word,
    cf_of_rational,
    convergents,
    cylinder_interval,
    denominator_dominance,
    format_word,
    iter_words,
    parse_word,
    reverse,
    value_of,
    word,
)
from .measure import (
    BoundedMeasure,
    LogRational,
    MeasureContradiction,
    PairVerdict,
    digit_tail_measure,
    joint_pattern_measure,
    measure_compare,
    measure_of_cylinder,
    measure_sum,
    pairwise_cylinder_inequality,
    reversal_equality_check,
)
from .stats import (
    ModeDescriptor,
    StreamStats,
    count_aligned,
    count_chunked,
    count_disjoint,
    count_overlapping,
    frequency_report,
    joint_occurrence_count,
    select_ap,
)
from .streams import (
    DigitSource,
    limit,
    parse_source_spec,
    source_concat_normal,
    source_decimal_interval,
    source_periodic,
    source_random_real,
    source_rational,
)

__version__ = "0.1.0"
