"""Command-line interface: ``svead <command> ...``.

Tabular results go to standard output (or ``--out``) as CSV; diagnostics
and warnings go to standard error.
"""

from __future__ import annotations

import argparse
import sys
import time
import warnings

from . import io as dio
from .core import DetectorConfig, Normalize, SVEADError, Variant
from .metrics import repeated_eval
from .scoring import fit_score
from .studies import DEFAULT_M_GRID, DEFAULT_RATES, DEFAULT_T_GRID, ablation, benchmark, contaminate, sweep
from .synth import GENERATORS

EXIT_OK = 0
EXIT_ERROR_ROWS = 1
EXIT_USAGE = 2


def _int_list(text: str) -> list[int]:
    try:
        values = [int(v) for v in text.replace(" ", "").split(",") if v]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None
    if not values or min(values) < 1:
        raise argparse.ArgumentTypeError(f"expected positive integers, got {text!r}")
    return values


def _float_list(text: str) -> list[float]:
    try:
        values = [float(v) for v in text.replace(" ", "").split(",") if v]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}") from None
    if not values:
        raise argparse.ArgumentTypeError("empty list")
    return values


def _add_detector_flags(p: argparse.ArgumentParser, m_flag: bool = True) -> None:
    if m_flag:
        p.add_argument("--m", type=int, default=16, help="anchors per partition (default 16)")
        p.add_argument("--t", type=int, default=100, help="ensemble size (default 100)")
    p.add_argument("--seed", type=int, default=0, help="master seed (default 0)")
    p.add_argument("--variant", choices=[v.value for v in Variant], default=Variant.DUAL_FACTOR.value)
    p.add_argument("--normalize", choices=[v.value for v in Normalize], default=Normalize.NONE.value)
    p.add_argument("--threads", type=int, default=1, help="worker threads; results do not depend on it")


def _add_input(p: argparse.ArgumentParser, labels_default) -> None:
    p.add_argument("input", help="CSV file of numeric rows")
    p.add_argument("--header", action="store_true", help="first line is a header")
    p.add_argument("--label-column", default=labels_default,
                   help="label column: 'last', 'first', 0-based index, header name, or 'none'"
                        + ("" if labels_default is None else f" (default {labels_default})"))
    p.add_argument("--out", default="-", help="output path (default stdout)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="svead", description="Stochastic Voronoi ensemble anomaly scoring.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("score", help="score every row of a CSV file")
    _add_input(p, None)
    _add_detector_flags(p)

    p = sub.add_parser("eval", help="AUC-ROC / AUC-PR over repeated seeded runs")
    _add_input(p, "last")
    _add_detector_flags(p)
    p.add_argument("--runs", type=int, default=5)

    p = sub.add_parser("sweep", help="evaluate over an (m, t) grid")
    _add_input(p, "last")
    _add_detector_flags(p, m_flag=False)
    p.add_argument("--m-grid", type=_int_list, default=list(DEFAULT_M_GRID))
    p.add_argument("--t-grid", type=_int_list, default=list(DEFAULT_T_GRID))
    p.add_argument("--runs", type=int, default=5)

    p = sub.add_parser("contaminate", help="evaluate with the anomaly rate subsampled to each given rate")
    _add_input(p, "last")
    _add_detector_flags(p)
    p.add_argument("--rates", type=_float_list, default=list(DEFAULT_RATES))
    p.add_argument("--runs", type=int, default=5)

    p = sub.add_parser("ablate", help="evaluate every scoring variant")
    _add_input(p, "last")
    _add_detector_flags(p)
    p.add_argument("--runs", type=int, default=5)

    p = sub.add_parser("bench", help="runtime on uniform random data")
    p.add_argument("--n-list", type=_int_list, default=[62_500, 125_000, 250_000, 500_000])
    p.add_argument("--d-list", type=_int_list, default=[10])
    p.add_argument("--m", type=int, default=256)
    p.add_argument("--t", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--out", default="-")

    p = sub.add_parser("synth", help="write a synthetic dataset as CSV (label last, no header)")
    p.add_argument("kind", choices=sorted(GENERATORS))
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--n-dense", type=int, default=200)
    p.add_argument("--n-sparse", type=int, default=200)
    p.add_argument("--scale-ratio", type=float, default=4.0)
    p.add_argument("--n-boundary", type=int, default=0)
    p.add_argument("--out", default="-")
    return parser


def _config(args, m=None, t=None) -> DetectorConfig:
    return DetectorConfig(
        m=args.m if m is None else m,
        t=args.t if t is None else t,
        seed=args.seed,
        variant=args.variant,
        normalize=args.normalize,
    )


def _load(args):
    label_column = None if args.label_column in (None, "none") else args.label_column
    return dio.load_csv(args.input, has_header=args.header, label_column=label_column)


def cmd_score(args) -> int:
    dataset = _load(args)
    config = _config(args)
    start = time.perf_counter()
    sv = fit_score(dataset, config, threads=args.threads)
    elapsed = time.perf_counter() - start
    dio.write_scores(args.out, sv, dataset)
    print(f"n={dataset.n} d={dataset.d} m={sv.effective_m} t={config.t} seconds={elapsed:.3f}", file=sys.stderr)
    return EXIT_OK


def cmd_eval(args) -> int:
    report = repeated_eval(_load(args), _config(args), args.runs, threads=args.threads)
    dio.write_table(args.out, ["metric", "value", "std"], [
        ("auc_roc", report.roc_mean, report.roc_std),
        ("auc_pr", report.pr_mean, report.pr_std),
    ])
    return EXIT_OK


def cmd_sweep(args) -> int:
    rows = sweep(_load(args), _config(args, m=1, t=1), args.m_grid, args.t_grid, args.runs, threads=args.threads)
    dio.write_table(args.out, ["m", "t", "auc_roc", "auc_roc_std", "auc_pr", "auc_pr_std"], [
        (r.m, r.t, r.report.roc_mean, r.report.roc_std, r.report.pr_mean, r.report.pr_std) for r in rows
    ])
    return EXIT_OK


def cmd_contaminate(args) -> int:
    rows = contaminate(_load(args), _config(args), args.rates, args.runs, threads=args.threads)
    out = []
    for r in rows:
        if r.report is None:
            print(f"error: rate {r.rate:g}: {r.error}", file=sys.stderr)
            out.append((r.rate, r.n_anomalies, "", "", r.error))
        else:
            out.append((r.rate, r.n_anomalies, r.report.roc_mean, r.report.roc_std, ""))
    dio.write_table(args.out, ["rate", "n_anomalies", "auc_roc", "std", "error"], out)
    return EXIT_ERROR_ROWS if any(r.report is None for r in rows) else EXIT_OK


def cmd_ablate(args) -> int:
    reports = ablation(_load(args), _config(args), args.runs, threads=args.threads)
    dio.write_table(args.out, ["variant", "auc_roc", "auc_roc_std", "auc_pr", "auc_pr_std"], [
        (v.value, r.roc_mean, r.roc_std, r.pr_mean, r.pr_std) for v, r in reports.items()
    ])
    return EXIT_OK


def cmd_bench(args) -> int:
    rows, slopes = benchmark(args.n_list, args.d_list, args.m, args.t, args.seed, threads=args.threads)
    dio.write_table(args.out, ["n", "d", "m", "t", "seconds"], [(r.n, r.d, r.m, r.t, r.seconds) for r in rows])
    for d, slope in slopes.items():
        if slope is None:
            print(f"d={d}: single size, no slope", file=sys.stderr)
        else:
            print(f"d={d}: log-log slope of seconds vs n = {slope:.3f}", file=sys.stderr)
    return EXIT_OK


def cmd_synth(args) -> int:
    if args.kind == "two-density":
        ds = GENERATORS[args.kind](args.seed, args.n_dense, args.n_sparse, args.scale_ratio, args.n_boundary)
    else:
        ds = GENERATORS[args.kind](args.seed)
    dio.write_dataset(args.out, ds)
    return EXIT_OK


COMMANDS = {
    "score": cmd_score,
    "eval": cmd_eval,
    "sweep": cmd_sweep,
    "contaminate": cmd_contaminate,
    "ablate": cmd_ablate,
    "bench": cmd_bench,
    "synth": cmd_synth,
}


def _show_warning(message, category, filename, lineno, file=None, line=None) -> None:
    print(f"warning: {message}", file=sys.stderr)


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    with warnings.catch_warnings():
        warnings.simplefilter("always")
        warnings.showwarning = _show_warning
        try:
            return COMMANDS[args.command](args)
        except (SVEADError, FileNotFoundError) as exc:
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
