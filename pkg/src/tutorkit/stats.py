"""Descriptive statistics for 0-100 mark samples.

Summary statistics use the population variance (divide by n). Display
formatting truncates rather than rounds: summary values to 2 decimals,
improvement percentages to 1 decimal. Internal values always keep full
float precision; truncation happens only when formatting.
"""
from __future__ import annotations

import csv
import decimal
import io
import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

__all__ = [
    "MarkSample",
    "CohortStats",
    "ReportRow",
    "PairedSeries",
    "ComparativeReport",
    "Histogram",
    "MarkRow",
    "MarksCsvError",
    "truncate_display",
    "summarize",
    "improvement",
    "histogram",
    "compare_cohorts",
    "stats_display",
    "read_marks_rows",
    "rows_to_samples",
    "write_marks_rows",
    "report_to_csv",
    "histogram_to_csv",
    "ascii_chart",
]

DEFAULT_BIN_WIDTH = 10.0


class MarksCsvError(ValueError):
    """A marks CSV violated the schema; the message names the line."""


@dataclass(frozen=True)
class MarkSample:
    label: str
    marks: tuple[float, ...]

    def __post_init__(self) -> None:
        if not self.label:
            raise ValueError("label must be non-empty")
        marks = tuple(float(m) for m in self.marks)
        if not marks:
            raise ValueError("a mark sample needs at least one mark")
        for m in marks:
            if not math.isfinite(m) or not 0.0 <= m <= 100.0:
                raise ValueError(f"mark {m!r} outside [0, 100]")
        object.__setattr__(self, "marks", marks)

    def __len__(self) -> int:
        return len(self.marks)


@dataclass(frozen=True)
class CohortStats:
    """Mean, population variance, standard deviation and coefficient of variation.

    ``coeff_variation`` is None when the mean is zero (undefined).
    """

    n: int
    mean: float
    variance: float
    stddev: float
    coeff_variation: float | None


@dataclass(frozen=True)
class ReportRow:
    label: str
    stats: CohortStats
    improvement_percent: float | None


@dataclass(frozen=True)
class PairedSeries:
    """Per-student pairing (index, baseline mark, other mark) for plotting."""

    label: str
    points: tuple[tuple[int, float, float], ...]


@dataclass(frozen=True)
class ComparativeReport:
    baseline_label: str
    rows: tuple[ReportRow, ...]
    paired_series: tuple[PairedSeries, ...]


@dataclass(frozen=True)
class Histogram:
    bin_width: float
    bins: tuple[tuple[float, int], ...]


@dataclass(frozen=True)
class MarkRow:
    cohort: str
    student_id: str
    mark: float


def truncate_display(value: float, places: int) -> str:
    """Format ``value`` with ``places`` decimals, truncating toward zero."""
    if not math.isfinite(value):
        raise ValueError("cannot format a non-finite value")
    with decimal.localcontext() as ctx:
        ctx.prec = 60
        q = decimal.Decimal(value).quantize(
            decimal.Decimal(1).scaleb(-places), rounding=decimal.ROUND_DOWN
        )
    return f"{q:.{places}f}"


def summarize(sample: MarkSample) -> CohortStats:
    """Full-precision summary statistics of one sample (population variance)."""
    arr = np.asarray(sample.marks, dtype=float)
    mean = float(arr.mean())
    variance = float(arr.var())
    stddev = math.sqrt(variance)
    coeff = stddev / mean if mean > 0.0 else None
    return CohortStats(len(sample.marks), mean, variance, stddev, coeff)


def _mean_of(value: CohortStats | float) -> float:
    if isinstance(value, CohortStats):
        return value.mean
    return float(value)


def improvement(new: CohortStats | float, baseline: CohortStats | float) -> float:
    """Percentage gain of a cohort mean over the baseline mean."""
    new_mean = _mean_of(new)
    base_mean = _mean_of(baseline)
    if not (math.isfinite(new_mean) and math.isfinite(base_mean)):
        raise ValueError("means must be finite")
    if base_mean <= 0.0:
        raise ValueError("baseline mean must be positive")
    return 100.0 * (new_mean - base_mean) / base_mean


def histogram(sample: MarkSample, bin_width: float = DEFAULT_BIN_WIDTH) -> Histogram:
    """Frequency counts over bins [0, w), [w, 2w), ... covering [0, 100].

    The final bin is closed on the right so a mark of exactly 100 lands in
    it. Empty bins are kept with count 0.
    """
    bin_width = float(bin_width)
    if not math.isfinite(bin_width) or bin_width <= 0.0:
        raise ValueError("bin_width must be positive")
    n_bins = max(1, math.ceil(100.0 / bin_width))
    counts = [0] * n_bins
    for mark in sample.marks:
        counts[min(int(mark // bin_width), n_bins - 1)] += 1
    bins = tuple((i * bin_width, counts[i]) for i in range(n_bins))
    return Histogram(bin_width, bins)


def compare_cohorts(
    baseline: MarkSample, others: Sequence[MarkSample] = ()
) -> ComparativeReport:
    """Summaries for all cohorts with improvement measured against the baseline.

    Cohorts with the same length as the baseline also get a paired
    per-student series for side-by-side plotting.
    """
    labels = [baseline.label] + [s.label for s in others]
    if len(set(labels)) != len(labels):
        raise ValueError("cohort labels must be distinct")
    base_stats = summarize(baseline)
    rows = [ReportRow(baseline.label, base_stats, None)]
    paired = []
    for sample in others:
        stats = summarize(sample)
        rows.append(ReportRow(sample.label, stats, improvement(stats, base_stats)))
        if len(sample) == len(baseline):
            points = tuple(
                (i, baseline.marks[i], sample.marks[i]) for i in range(len(sample))
            )
            paired.append(PairedSeries(sample.label, points))
    return ComparativeReport(baseline.label, tuple(rows), tuple(paired))


def stats_display(stats: CohortStats) -> dict[str, str]:
    """Truncated display strings for one stats row."""
    return {
        "n": str(stats.n),
        "mean": truncate_display(stats.mean, 2),
        "variance": truncate_display(stats.variance, 2),
        "stddev": truncate_display(stats.stddev, 2),
        "coeff_variation": (
            "" if stats.coeff_variation is None else truncate_display(stats.coeff_variation, 2)
        ),
    }


# --- marks CSV schema: header `cohort,student_id,mark`, UTF-8, LF ---

_MARKS_HEADER = ["cohort", "student_id", "mark"]


def _parse_mark(text: str, line_no: int) -> float:
    text = text.strip()
    if not text:
        raise MarksCsvError(f"line {line_no}: empty mark")
    try:
        value = float(text)
    except ValueError:
        raise MarksCsvError(f"line {line_no}: mark {text!r} is not a number") from None
    if not math.isfinite(value) or not 0.0 <= value <= 100.0:
        raise MarksCsvError(f"line {line_no}: mark {text} outside [0, 100]")
    if "." in text and len(text.split(".", 1)[1]) > 2:
        raise MarksCsvError(f"line {line_no}: mark {text} has more than 2 decimal places")
    return value


def read_marks_rows(text: str) -> list[MarkRow]:
    """Parse marks CSV text; schema violations name the offending line."""
    reader = csv.reader(io.StringIO(text))
    rows: list[MarkRow] = []
    header_seen = False
    for line_no, record in enumerate(reader, start=1):
        if not record or (len(record) == 1 and not record[0].strip()):
            continue
        if not header_seen:
            if [c.strip() for c in record] != _MARKS_HEADER:
                raise MarksCsvError(
                    f"line {line_no}: expected header {','.join(_MARKS_HEADER)!r}"
                )
            header_seen = True
            continue
        if len(record) != 3:
            raise MarksCsvError(f"line {line_no}: expected 3 fields, got {len(record)}")
        cohort, student_id, mark_text = (c.strip() for c in record)
        if not cohort:
            raise MarksCsvError(f"line {line_no}: empty cohort label")
        if not student_id:
            raise MarksCsvError(f"line {line_no}: empty student_id")
        rows.append(MarkRow(cohort, student_id, _parse_mark(mark_text, line_no)))
    if not header_seen:
        raise MarksCsvError("line 1: missing header")
    return rows


def rows_to_samples(rows: Iterable[MarkRow]) -> dict[str, MarkSample]:
    """Group rows into one MarkSample per cohort, keeping first-seen order."""
    grouped: dict[str, list[float]] = {}
    for row in rows:
        grouped.setdefault(row.cohort, []).append(row.mark)
    return {label: MarkSample(label, tuple(marks)) for label, marks in grouped.items()}


def write_marks_rows(rows: Iterable[MarkRow]) -> str:
    lines = [",".join(_MARKS_HEADER)]
    for row in rows:
        lines.append(f"{row.cohort},{row.student_id},{row.mark:.2f}")
    return "\n".join(lines) + "\n"


def report_to_csv(report: ComparativeReport) -> str:
    """Report CSV with display-truncated cells; the baseline improvement cell is empty."""
    lines = ["label,n,mean,variance,stddev,coeff_variation,improvement_percent"]
    for row in report.rows:
        d = stats_display(row.stats)
        imp = (
            ""
            if row.improvement_percent is None
            else truncate_display(row.improvement_percent, 1)
        )
        lines.append(
            f"{row.label},{d['n']},{d['mean']},{d['variance']},{d['stddev']},"
            f"{d['coeff_variation']},{imp}"
        )
    return "\n".join(lines) + "\n"


def histogram_to_csv(hist: Histogram) -> str:
    lines = ["bin_lower,count"]
    for lower, count in hist.bins:
        lines.append(f"{lower:g},{count}")
    return "\n".join(lines) + "\n"


def ascii_chart(hist: Histogram, width: int = 40) -> str:
    """Horizontal bar chart of a histogram, one line per bin."""
    if width < 1:
        raise ValueError("width must be at least 1")
    peak = max((count for _, count in hist.bins), default=0)
    lines = []
    for lower, count in hist.bins:
        if peak == 0 or count == 0:
            bar = ""
        else:
            bar = "#" * max(1, round(width * count / peak))
        lines.append(f"{lower:>6g} | {bar} {count}")
    return "\n".join(lines) + "\n"
