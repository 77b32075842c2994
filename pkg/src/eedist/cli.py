"""Command-line interface: ``eedist {dist,symbolize,tune,eval,bench,index}``.

Exit codes: 0 success, 1 runtime failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import evaluation as ev
from .dataset import iter_datasets, load_ucr
from .metricindex import MetricIndex
from .sax import SaxParams, segments_for_ratio, symbolize
from .seqdist import SymbolicSequence, distinct_char_count, eed, edit_distance, histogram_divergence, lcss
from .validation import InvalidParameterError, ParseError, check_alphabet_size

log = logging.getLogger("eedist")

EXIT_OK, EXIT_FAILURE, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _alpha_range(text: str) -> tuple[int, int]:
    try:
        if ".." in text:
            lo, hi = text.split("..", 1)
            return int(lo), int(hi)
        return int(text), int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected N or LO..HI, got {text!r}") from None


def _float_list(text: str) -> list[float]:
    try:
        return [float(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}") from None


@dataclass
class RunConfig:
    command: str
    metrics: list[str] = field(default_factory=lambda: ["eed"])
    alpha_range: tuple[int, int] = (3, 10)
    lambdas: list[float] = field(default_factory=lambda: list(ev.DEFAULT_LAMBDAS))
    ratio: float = 4.0
    fmt: str = "table"
    seed: int = 0

    def __post_init__(self):
        lo, hi = self.alpha_range
        if lo > hi:
            raise UsageError(f"alphabet range {lo}..{hi} is not well ordered")
        for a in (lo, hi):
            try:
                check_alphabet_size(a)
            except InvalidParameterError as exc:
                raise UsageError(str(exc)) from None
        if self.ratio < 1:
            raise UsageError(f"compression ratio must be >= 1, got {self.ratio}")
        if any(v < 0 for v in self.lambdas) or not self.lambdas:
            raise UsageError("lambda grid must be nonempty and >= 0")
        try:
            self.metrics = [ev.MetricKind.parse(m).value for m in self.metrics]
        except InvalidParameterError as exc:
            raise UsageError(str(exc)) from None


def _config(args, metrics) -> RunConfig:
    return RunConfig(
        command=args.command,
        metrics=metrics,
        alpha_range=args.alpha,
        lambdas=args.lambdas,
        ratio=args.ratio,
        fmt=args.format,
        seed=args.seed,
    )


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


# ---------------------------------------------------------------- commands


def cmd_dist(args) -> int:
    try:
        s = SymbolicSequence.from_text(args.s, args.alphabet)
        t = SymbolicSequence.from_text(args.t, args.alphabet)
    except InvalidParameterError as exc:
        raise UsageError(str(exc)) from None
    metric = args.metric
    if metric == "ed":
        value = edit_distance(s, t)
    elif metric == "eed":
        value = eed(s, t, args.lam)
    elif metric == "lcss":
        value = lcss(s, t)
    elif metric == "hist":
        value = histogram_divergence(s, t)
    else:
        value = distinct_char_count(s, t)
    print(f"{value:.6f}")
    return EXIT_OK


def _read_series(args) -> list[np.ndarray]:
    if args.values is not None:
        return [np.array(args.values, dtype=np.float64)]
    if args.path is None:
        raise UsageError("symbolize needs a file or --values")
    if args.raw:
        rows = []
        for line in Path(args.path).read_text().splitlines():
            if line.strip():
                rows.append(np.array([float(v) for v in line.replace(",", " ").split()]))
        return rows
    return [np.array(s.series) for s in load_ucr(args.path).instances]


def cmd_symbolize(args) -> int:
    try:
        check_alphabet_size(args.alphabet)
    except InvalidParameterError as exc:
        raise UsageError(str(exc)) from None
    for series in _read_series(args):
        w = args.segments or segments_for_ratio(len(series), args.ratio)
        if w > len(series):
            raise UsageError(f"{w} segments requested for a series of length {len(series)}")
        print(symbolize(series, SaxParams(args.alphabet, w)).to_text())
    return EXIT_OK


def _tune_table(report: ev.TuneReport) -> str:
    rows = [("alpha", "lambda", "train_error")]
    rows += [("-" if a is None else str(a), "-" if lam is None else f"{lam:g}", f"{e:.4f}")
             for a, lam, e in report.grid]
    widths = [max(len(r[i]) for r in rows) for i in range(3)]
    lines = ["  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip() for r in rows]
    best_lam = "-" if report.best_lambda is None else f"{report.best_lambda:g}"
    lines.append(
        f"best: {report.dataset} {report.metric} alpha={report.best_alpha} "
        f"lambda={best_lam} train_error={report.train_error:.4f}"
    )
    return "\n".join(lines) + "\n"


def cmd_tune(args) -> int:
    cfg = _config(args, [args.metric])
    train = load_ucr(args.train, role="train")
    report = ev.grid_search(train, cfg.metrics[0], cfg.alpha_range, cfg.lambdas, cfg.ratio)
    if cfg.fmt == "json":
        text = json.dumps(report.to_dict(), sort_keys=True) + "\n"
    elif cfg.fmt == "csv":
        text = "alpha,lambda,train_error\n" + "".join(
            f"{'' if a is None else a},{'' if lam is None else lam},{e}\n" for a, lam, e in report.grid
        )
    else:
        text = _tune_table(report)
    _emit(text, args.out)
    return EXIT_OK


def _render(reports, summaries, fmt) -> str:
    if fmt == "json":
        return ev.format_json(reports, summaries)
    if fmt == "csv":
        return ev.format_csv(reports, summaries)
    return ev.format_table(reports, summaries)


def cmd_eval(args) -> int:
    kind = ev.MetricKind.parse(args.metric)
    if kind.symbolic and args.alphabet is None:
        raise UsageError(f"{kind.value} needs --alphabet")
    if kind is ev.MetricKind.EED and args.lam is None:
        raise UsageError("EED needs --lambda")
    train = load_ucr(args.train, role="train")
    test = load_ucr(args.test, role="test")
    report = ev.evaluate(train, test, kind, args.alphabet, args.lam, args.ratio)
    _emit(_render([report], [], args.format), args.out)
    return EXIT_OK


def cmd_bench(args) -> int:
    cfg = _config(args, [m for m in args.metrics.split(",") if m])
    if args.data:
        sources = [("dir", d) for d in args.data]
    elif args.train and args.test:
        sources = [("pair", (args.train, args.test))]
    else:
        raise UsageError("bench needs --data DIR... or both --train and --test")

    reports: list[ev.EvalReport] = []
    failures = 0
    for kind_of_source, src in sources:
        try:
            if kind_of_source == "dir":
                _, train, test = next(iter(iter_datasets([src])))
            else:
                train = load_ucr(src[0], role="train")
                test = load_ucr(src[1], role="test")
        except (OSError, ParseError) as exc:
            failures += 1
            print(f"skipping {src}: {exc}", file=sys.stderr)
            continue
        for metric in cfg.metrics:
            _, report = ev.tune_and_evaluate(train, test, metric, cfg.alpha_range, cfg.lambdas, cfg.ratio)
            log.info("%s %s alpha=%s lambda=%s error=%.3f", report.dataset, report.metric,
                     report.alpha, report.lam, report.test_error)
            reports.append(report)
    if failures == len(sources):
        print("no dataset could be loaded", file=sys.stderr)
        return EXIT_FAILURE
    summaries = [ev.summarize([r for r in reports if r.metric == m]) for m in cfg.metrics]
    _emit(_render(reports, summaries, cfg.fmt), args.out)
    return EXIT_OK


def cmd_index(args) -> int:
    if args.metric == "eed" and args.lam is None:
        raise UsageError("EED needs --lambda")
    if args.radius is not None and args.radius < 0:
        raise UsageError("--radius must be >= 0")
    strings = [line.strip() for line in Path(args.file).read_text().splitlines() if line.strip()]
    if not strings:
        raise ParseError(f"no strings in {args.file}")
    index = MetricIndex.build(strings, ev.MetricSpec.of(args.metric, args.lam), seed=args.seed)
    for q in args.query:
        if args.radius is None:
            i, d = index.query_nn(q)
            print(f"{q}\t{i}\t{strings[i]}\t{d:.6f}")
        else:
            for i, d in index.query_range(q, args.radius):
                print(f"{q}\t{i}\t{strings[i]}\t{d:.6f}")
    return EXIT_OK


# ---------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="eedist", description="Symbolic sequence distances and 1-NN time-series benchmarks.")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    def tuning_flags(p, metrics_flag=True):
        p.add_argument("--alpha", type=_alpha_range, default=(3, 10), help="alphabet range LO..HI (default 3..10)")
        p.add_argument("--lambdas", type=_float_list, default=list(ev.DEFAULT_LAMBDAS),
                       help="comma-separated frequency factors (default 0,0.25,0.5,0.75,1)")
        p.add_argument("--ratio", type=float, default=4.0, help="compression ratio 1:R (default 4)")
        p.add_argument("--format", choices=("table", "json", "csv"), default="table")
        p.add_argument("--out", help="write the report here instead of stdout")
        p.add_argument("--seed", type=int, default=0)

    p = sub.add_parser("dist", help="distance between two letter strings")
    p.add_argument("--metric", choices=("ed", "eed", "lcss", "hist", "nc"), default="eed")
    p.add_argument("--lambda", dest="lam", type=float, default=1.0)
    p.add_argument("--alphabet", type=int, default=26, help="letters allowed: the first N of a..z")
    p.add_argument("s")
    p.add_argument("t")
    p.set_defaults(func=cmd_dist)

    p = sub.add_parser("symbolize", help="print SAX words")
    p.add_argument("path", nargs="?", help="UCR file (label first) or, with --raw, one series per line")
    p.add_argument("--values", type=_float_list, help="a single comma-separated series")
    p.add_argument("--raw", action="store_true", help="input lines carry no label")
    p.add_argument("--alphabet", type=int, default=4)
    p.add_argument("--ratio", type=float, default=4.0)
    p.add_argument("--segments", type=int, help="word length; overrides --ratio")
    p.set_defaults(func=cmd_symbolize)

    p = sub.add_parser("tune", help="leave-one-out grid search on a training file")
    p.add_argument("--train", required=True)
    p.add_argument("--metric", default="eed")
    tuning_flags(p)
    p.set_defaults(func=cmd_tune)

    p = sub.add_parser("eval", help="test error with fixed parameters")
    p.add_argument("--train", required=True)
    p.add_argument("--test", required=True)
    p.add_argument("--metric", default="eed")
    p.add_argument("--alphabet", type=int)
    p.add_argument("--lambda", dest="lam", type=float)
    p.add_argument("--ratio", type=float, default=4.0)
    p.add_argument("--format", choices=("table", "json", "csv"), default="table")
    p.add_argument("--out")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("bench", help="tune on train, evaluate on test, for each dataset and metric")
    p.add_argument("--data", nargs="+", help="dataset directories holding <name>_TRAIN and <name>_TEST")
    p.add_argument("--train")
    p.add_argument("--test")
    p.add_argument("--metrics", default="ed,eed,sax")
    tuning_flags(p)
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("index", help="nearest-neighbor queries over a file of strings")
    p.add_argument("--file", required=True, help="one string per line")
    p.add_argument("--metric", choices=("ed", "eed"), default="eed")
    p.add_argument("--lambda", dest="lam", type=float)
    p.add_argument("--query", action="append", required=True)
    p.add_argument("--radius", type=float, help="range query instead of nearest neighbor")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_index)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(message)s")
    try:
        return args.func(args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"eedist {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (OSError, ValueError) as exc:
        print(f"eedist {args.command}: {exc}", file=sys.stderr)
        return EXIT_FAILURE


if __name__ == "__main__":
    sys.exit(main())
