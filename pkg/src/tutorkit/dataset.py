"""Bundled classroom marks from a three-modality field study, plus the summary
table that was published with them.

The raw marks are the authoritative data. The published summary is kept only
as a reference to diagnose against: recomputing the statistics from the raw
marks does not reproduce every published cell (the published table mixes
truncated and rounded last digits, and two cohort means disagree with their
own raw rows outright). :func:`published_diagnostic` reports, cell by cell,
what the raw data actually gives and whether the published value matches
under this package's display rule.
"""
from __future__ import annotations

from dataclasses import dataclass
from importlib.resources import files

from .stats import (
    ComparativeReport,
    MarkRow,
    MarkSample,
    compare_cohorts,
    improvement,
    read_marks_rows,
    rows_to_samples,
    truncate_display,
)

__all__ = [
    "BASELINE_LABEL",
    "COHORT_LABELS",
    "PublishedStats",
    "PUBLISHED_SUMMARY",
    "DiagnosticCell",
    "fixture_csv_text",
    "fixture_rows",
    "classroom_marks",
    "classroom_report",
    "published_diagnostic",
]

BASELINE_LABEL = "classical"
COHORT_LABELS = ("classical", "cal-novoice", "cal-voice")


@dataclass(frozen=True)
class PublishedStats:
    """One row of the published summary table, exactly as printed."""

    label: str
    mean: float
    variance: float
    stddev: float
    coeff_variation: float
    improvement_percent: float | None


PUBLISHED_SUMMARY = (
    PublishedStats("classical", 32.46, 265.32, 16.28, 0.50, None),
    PublishedStats("cal-novoice", 46.80, 297.49, 17.24, 0.36, 44.1),
    PublishedStats("cal-voice", 64.33, 283.42, 16.83, 0.26, 98.2),
)


@dataclass(frozen=True)
class DiagnosticCell:
    """Comparison of one published cell against recomputation from raw marks.

    ``recomputed`` is the full-precision value; ``recomputed_display`` applies
    the package display rule (truncation). ``matches`` is True when the
    truncated recomputation renders identically to the published value.
    """

    label: str
    field: str
    published: float
    published_display: str
    recomputed: float
    recomputed_display: str
    matches: bool


def fixture_csv_text() -> str:
    return files("tutorkit").joinpath("data/classroom_marks.csv").read_text(encoding="utf-8")


def fixture_rows() -> list[MarkRow]:
    return read_marks_rows(fixture_csv_text())


def classroom_marks() -> dict[str, MarkSample]:
    """The bundled marks grouped per cohort label."""
    return rows_to_samples(fixture_rows())


def classroom_report() -> ComparativeReport:
    samples = classroom_marks()
    baseline = samples[BASELINE_LABEL]
    others = [samples[label] for label in COHORT_LABELS if label != BASELINE_LABEL]
    return compare_cohorts(baseline, others)


def _cell(label: str, field: str, published: float, recomputed: float, places: int) -> DiagnosticCell:
    published_display = f"{published:.{places}f}"
    recomputed_display = truncate_display(recomputed, places)
    return DiagnosticCell(
        label,
        field,
        published,
        published_display,
        recomputed,
        recomputed_display,
        recomputed_display == published_display,
    )


def published_diagnostic(report: ComparativeReport | None = None) -> list[DiagnosticCell]:
    """Compare every published summary cell against the recomputed report.

    Returns one cell per (cohort, field); callers usually care about the
    subset with ``matches`` False.
    """
    if report is None:
        report = classroom_report()
    rows_by_label = {row.label: row for row in report.rows}
    cells: list[DiagnosticCell] = []
    for published in PUBLISHED_SUMMARY:
        row = rows_by_label.get(published.label)
        if row is None:
            raise ValueError(f"report has no cohort labelled {published.label!r}")
        stats = row.stats
        cells.append(_cell(published.label, "mean", published.mean, stats.mean, 2))
        cells.append(_cell(published.label, "variance", published.variance, stats.variance, 2))
        cells.append(_cell(published.label, "stddev", published.stddev, stats.stddev, 2))
        if stats.coeff_variation is not None:
            cells.append(
                _cell(
                    published.label,
                    "coeff_variation",
                    published.coeff_variation,
                    stats.coeff_variation,
                    2,
                )
            )
        if published.improvement_percent is not None and row.improvement_percent is not None:
            cells.append(
                _cell(
                    published.label,
                    "improvement_percent",
                    published.improvement_percent,
                    row.improvement_percent,
                    1,
                )
            )
            # Second check: take the published means at face value and see
            # whether the published improvement cell follows from them.
            baseline_published = PUBLISHED_SUMMARY[0].mean
            cells.append(
                _cell(
                    published.label,
                    "improvement_from_published_means",
                    published.improvement_percent,
                    improvement(published.mean, baseline_published),
                    1,
                )
            )
    return cells
