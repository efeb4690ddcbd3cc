"""Analyze the bundled classroom marks the way the original study tabulated them.

Three cohorts of 15 children each: classroom teaching, the tutoring program
without narration, and the tutoring program with narration. The report shows
mean, population variance, standard deviation, coefficient of variation, and
the percentage improvement over the classroom baseline, all display-truncated
(never rounded).

The bundled data also ships the summary table as it was originally published.
Recomputing from the raw marks does not reproduce every published cell; the
diagnostic below flags each divergent cell instead of hiding the conflict.
"""
from tutorkit.dataset import classroom_report, published_diagnostic
from tutorkit.stats import report_to_csv, stats_display, truncate_display

report = classroom_report()
for row in report.rows:
    d = stats_display(row.stats)
    improvement = (
        "-"
        if row.improvement_percent is None
        else truncate_display(row.improvement_percent, 1) + "%"
    )
    print(
        f"{row.label:<12} n={d['n']} mean={d['mean']} variance={d['variance']} "
        f"stddev={d['stddev']} coeff={d['coeff_variation']} improvement={improvement}"
    )

print()
print("paired per-student series are available for equal-sized cohorts:")
series = report.paired_series[0]
print(f"  {series.label}: first three pairs {series.points[:3]}")

print()
print("published-summary diagnostic (recomputed from the raw marks):")
for cell in published_diagnostic(report):
    marker = "ok  " if cell.matches else "FLAG"
    print(
        f"  {marker} {cell.label:<12} {cell.field:<32} "
        f"published={cell.published_display} recomputed={cell.recomputed_display}"
    )

print()
print("machine-readable report CSV:")
print(report_to_csv(report), end="")
