"""Command-line entry point.

Subcommands: simulate, sweep, analyze, histogram, gen-problems, serve,
import-fixture. Machine-readable outputs go to files; human-readable
summaries go to stdout. Exit codes: 0 success, 2 usage error, 1 runtime
error. Every run with a --seed is reproducible byte for byte.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import cohort, dataset, longdiv, stats

__all__ = ["main", "build_parser"]


class UsageError(Exception):
    """Invalid flag combination detected after argparse; exits with code 2."""


def _positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return value


def _seed_value(text: str) -> int:
    value = int(text)
    if not 0 <= value < 2**64:
        raise argparse.ArgumentTypeError("seed must be an unsigned 64-bit decimal integer")
    return value


def _eta_value(text: str) -> float:
    value = float(text)
    if not 0.0 < value <= 1.0:
        raise argparse.ArgumentTypeError(f"eta must lie in (0, 1], got {text}")
    return value


def _bin_width(text: str) -> float:
    value = float(text)
    if value <= 0.0:
        raise argparse.ArgumentTypeError("bin width must be positive")
    return value


def _write_text(path: str, text: str) -> None:
    # single atomic-ish write: content is fully built before the file is touched
    Path(path).write_bytes(text.encode("utf-8"))


def _print_stats_line(label: str, s: stats.CohortStats) -> None:
    d = stats.stats_display(s)
    coeff = d["coeff_variation"] or "-"
    print(
        f"{label}: n={d['n']} mean={d['mean']} variance={d['variance']} "
        f"stddev={d['stddev']} coeff_variation={coeff}"
    )


def _cmd_simulate(args: argparse.Namespace) -> int:
    config = cohort.ModalityConfig(label=args.label, eta=args.eta)
    result = cohort.run_cohort(config, args.cohort_size, args.seed)
    _write_text(args.out, cohort.records_to_csv(result))
    sample = stats.MarkSample(args.label, tuple(r.score for r in result.records))
    _print_stats_line(args.label, stats.summarize(sample))
    print(f"wrote {len(result.records)} records to {args.out}")
    return 0


def _cmd_sweep(args: argparse.Namespace) -> int:
    base = cohort.ModalityConfig(label=args.label, eta=args.etas[0])
    results = cohort.sweep(args.etas, base, args.cohort_size, args.seed)
    _write_text(args.out, cohort.records_to_csv(results))
    for result in results:
        sample = stats.MarkSample(
            result.config.label, tuple(r.score for r in result.records)
        )
        _print_stats_line(result.config.label, stats.summarize(sample))
    print(f"wrote {sum(len(r.records) for r in results)} records to {args.out}")
    return 0


def _load_samples(path: str) -> dict[str, stats.MarkSample]:
    text = Path(path).read_text(encoding="utf-8")
    return stats.rows_to_samples(stats.read_marks_rows(text))


def _print_report(report: stats.ComparativeReport) -> None:
    header = f"{'label':<14} {'n':>3} {'mean':>8} {'variance':>9} {'stddev':>7} {'coeff':>6} {'improv%':>8}"
    print(header)
    for row in report.rows:
        d = stats.stats_display(row.stats)
        imp = (
            "-"
            if row.improvement_percent is None
            else stats.truncate_display(row.improvement_percent, 1)
        )
        coeff = d["coeff_variation"] or "-"
        print(
            f"{row.label:<14} {d['n']:>3} {d['mean']:>8} {d['variance']:>9} "
            f"{d['stddev']:>7} {coeff:>6} {imp:>8}"
        )


def _print_published_diagnostic(report: stats.ComparativeReport) -> None:
    cells = dataset.published_diagnostic(report)
    mismatches = [c for c in cells if not c.matches]
    if not mismatches:
        print("published-summary diagnostic: all cells reproduced")
        return
    print("published-summary diagnostic: mismatched cells")
    for cell in mismatches:
        print(
            f"  flag {cell.label} {cell.field}: published {cell.published_display}, "
            f"recomputed {cell.recomputed:.2f} (displays as {cell.recomputed_display})"
        )


def _cmd_analyze(args: argparse.Namespace) -> int:
    samples = _load_samples(args.input)
    if args.baseline not in samples:
        print(
            f"error: baseline {args.baseline!r} not in input; available labels: "
            f"{sorted(samples)}",
            file=sys.stderr,
        )
        return 1
    baseline = samples[args.baseline]
    others = [s for label, s in samples.items() if label != args.baseline]
    report = stats.compare_cohorts(baseline, others)
    _print_report(report)
    if args.out:
        _write_text(args.out, stats.report_to_csv(report))
        print(f"wrote report to {args.out}")
    if set(samples) == set(dataset.COHORT_LABELS):
        _print_published_diagnostic(report)
    return 0


def _cmd_histogram(args: argparse.Namespace) -> int:
    samples = _load_samples(args.input)
    if args.label is None:
        if len(samples) != 1:
            print(
                f"error: input has cohorts {sorted(samples)}; pick one with --label",
                file=sys.stderr,
            )
            return 1
        sample = next(iter(samples.values()))
    elif args.label in samples:
        sample = samples[args.label]
    else:
        print(
            f"error: label {args.label!r} not in input; available labels: {sorted(samples)}",
            file=sys.stderr,
        )
        return 1
    hist = stats.histogram(sample, args.bin_width)
    if args.out:
        _write_text(args.out, stats.histogram_to_csv(hist))
        print(f"wrote histogram to {args.out}")
    if args.ascii or not args.out:
        print(stats.ascii_chart(hist), end="")
    return 0


def _cmd_gen_problems(args: argparse.Namespace) -> int:
    if not args.divisor_digits <= args.dividend_digits <= longdiv.MAX_DIGITS:
        raise UsageError(
            f"need divisor-digits <= dividend-digits <= {longdiv.MAX_DIGITS}, "
            f"got {args.divisor_digits} and {args.dividend_digits}"
        )
    lines = []
    for k in range(args.count):
        rng = cohort.learner_rng(args.seed, k)
        problem = longdiv.generate_problem(args.dividend_digits, args.divisor_digits, rng)
        if args.with_traces:
            payload = longdiv.trace_to_dict(longdiv.solve_trace(problem))
        else:
            payload = {"dividend": problem.dividend, "divisor": problem.divisor}
        lines.append(json.dumps(payload, separators=(",", ":"), sort_keys=True))
    _write_text(args.out, "\n".join(lines) + "\n")
    print(f"wrote {args.count} problems to {args.out}")
    return 0


def _cmd_serve(args: argparse.Namespace) -> int:
    import dataclasses

    import uvicorn

    from .service import create_app, load_config

    config = load_config(args.config)
    if args.port is not None:
        config = dataclasses.replace(config, port=args.port)
    if args.data_dir is not None:
        config = dataclasses.replace(config, data_dir=args.data_dir)
    app = create_app(config)
    uvicorn.run(app, host=args.host, port=config.port, log_level="warning")
    return 0


def _cmd_import_fixture(args: argparse.Namespace) -> int:
    text = dataset.fixture_csv_text()
    if args.out:
        _write_text(args.out, text)
        print(f"wrote bundled classroom marks to {args.out}")
    if args.service_url:
        import urllib.request

        request = urllib.request.Request(
            args.service_url.rstrip("/") + "/admin/import-marks",
            data=text.encode("utf-8"),
            headers={"Content-Type": "text/csv"},
            method="POST",
        )
        if args.admin_token:
            request.add_header("X-Admin-Token", args.admin_token)
        with urllib.request.urlopen(request) as response:
            print(response.read().decode("utf-8"))
    if not args.out and not args.service_url:
        print("error: pass --out and/or --service-url", file=sys.stderr)
        return 1
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tutorkit",
        description="Learning-cohort simulation, mark statistics, and the long-division tutoring service.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("simulate", help="run one seeded cohort and write its achievement CSV")
    p.add_argument("--eta", type=_eta_value, required=True, help="learning rate in (0, 1]")
    p.add_argument("--cohort-size", type=_positive_int, default=200)
    p.add_argument("--seed", type=_seed_value, required=True)
    p.add_argument("--label", default="cohort")
    p.add_argument("--out", required=True, help="achievement CSV output path")
    p.set_defaults(func=_cmd_simulate)

    p = sub.add_parser("sweep", help="run one cohort per learning rate, same seed throughout")
    p.add_argument("--etas", type=_eta_value, nargs="+", required=True)
    p.add_argument("--cohort-size", type=_positive_int, default=200)
    p.add_argument("--seed", type=_seed_value, required=True)
    p.add_argument("--label", default="cohort")
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_sweep)

    p = sub.add_parser("analyze", help="comparative statistics for a marks CSV")
    p.add_argument("--input", required=True, help="marks CSV (cohort,student_id,mark)")
    p.add_argument("--baseline", required=True, help="baseline cohort label")
    p.add_argument("--out", help="report CSV output path")
    p.set_defaults(func=_cmd_analyze)

    p = sub.add_parser("histogram", help="achievement histogram from a marks CSV")
    p.add_argument("--input", required=True)
    p.add_argument("--label", help="cohort label (required when the file has several)")
    p.add_argument("--bin-width", type=_bin_width, default=stats.DEFAULT_BIN_WIDTH)
    p.add_argument("--out", help="histogram CSV output path")
    p.add_argument("--ascii", action="store_true", help="also print an ASCII bar chart")
    p.set_defaults(func=_cmd_histogram)

    p = sub.add_parser("gen-problems", help="write a JSONL file of division problems")
    p.add_argument("--count", type=_positive_int, required=True)
    p.add_argument("--dividend-digits", type=_positive_int, required=True)
    p.add_argument("--divisor-digits", type=_positive_int, required=True)
    p.add_argument("--seed", type=_seed_value, required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--with-traces", action="store_true", help="emit full step traces")
    p.set_defaults(func=_cmd_gen_problems)

    p = sub.add_parser("serve", help="run the tutoring session service")
    p.add_argument("--config", help="JSON config file")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int)
    p.add_argument("--data-dir", help="override the event-log directory")
    p.set_defaults(func=_cmd_serve)

    p = sub.add_parser("import-fixture", help="export or upload the bundled classroom marks")
    p.add_argument("--out", help="write the fixture as a marks CSV")
    p.add_argument("--service-url", help="POST the fixture to a running service")
    p.add_argument("--admin-token", help="admin token for the service import endpoint")
    p.set_defaults(func=_cmd_import_fixture)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    except BrokenPipeError:
        return 1
    except (ValueError, OSError, ZeroDivisionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
