"""Command-line entry point.

Subcommands mirror the analysis surface: ``capacity`` evaluates the
closed form over an epsilon grid, ``threshold`` runs density-evolution
bisection per size model, ``simulate`` runs finite-length Monte Carlo
trials, ``pm-table`` dumps sumset-size distributions, ``decode-trace``
replays one decoding run from graph/received files.  Everything emits
CSV (header comment line with the invocation and seed, then a header
row); identical flags and seed give byte-identical output.

Exit codes: 0 ok, 2 validation error, 3 enumeration budget exceeded.
"""

from __future__ import annotations

import argparse
import csv
import io
import sys

from .channel import PartialErasureChannel
from .decoder import decode
from .density_evolution import DeConfig, threshold_search
from .gf import GF
from .ldpc import DegreeDistribution, TannerGraph
from .simulation import run_trials
from .sumset_models import (
    MODEL_KINDS,
    EnumerationBudgetError,
    SumsetSizeModel,
)
from .symbol_sets import SymbolSet


class CliError(ValueError):
    pass


def _fmt(x) -> str:
    if isinstance(x, float):
        return format(x, ".12g")
    return str(x)


def _parse_eps(args) -> list[float]:
    if (args.eps is None) == (args.eps_grid is None):
        raise CliError("give exactly one of --eps or --eps-grid start:stop:step")
    if args.eps is not None:
        grid = [args.eps]
    else:
        try:
            start, stop, step = (float(tok) for tok in args.eps_grid.split(":"))
        except ValueError:
            raise CliError(f"bad --eps-grid {args.eps_grid!r}") from None
        if step <= 0 or stop < start:
            raise CliError("eps grid needs step > 0 and stop >= start")
        grid = []
        k = 0
        while True:
            v = start + k * step
            if v > stop + 1e-9:
                break
            grid.append(min(v, 1.0))
            k += 1
    for v in grid:
        if not 0.0 <= v <= 1.0:
            raise CliError(f"epsilon {v} outside [0, 1]")
    return grid


def _parse_int_list(text: str, what: str) -> list[int]:
    try:
        return [int(tok) for tok in text.split(",") if tok.strip()]
    except ValueError:
        raise CliError(f"bad {what} list {text!r}") from None


def _parse_models(text: str) -> list[str]:
    names = [tok.strip() for tok in text.split(",") if tok.strip()]
    for name in names:
        if name not in MODEL_KINDS:
            raise CliError(f"unknown model {name!r}; choose from {', '.join(MODEL_KINDS)}")
    return names


def _make_model(kind: str, args) -> SumsetSizeModel:
    if kind == "exact" and getattr(args, "mc_samples", None):
        return SumsetSizeModel(
            "exact", mc_samples=args.mc_samples, mc_seed=args.seed
        )
    return SumsetSizeModel(kind)


def _emit(args, invocation: list[str], header: list[str], rows) -> None:
    # record what was computed, not where it was written
    echo = []
    skip = False
    for tok in invocation:
        if skip:
            skip = False
            continue
        if tok == "--out":
            skip = True
            continue
        echo.append(tok)
    buf = io.StringIO()
    buf.write("# pecldpc " + " ".join(echo) + f" seed={args.seed}\n")
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([_fmt(x) for x in row])
    text = buf.getvalue()
    if args.out:
        with open(args.out, "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# -- subcommands -------------------------------------------------------------


def _cmd_capacity(args, argv):
    field = GF(args.q)
    rows = []
    for m in _parse_int_list(args.M, "--M"):
        for eps in _parse_eps(args):
            ch = PartialErasureChannel(field, m, eps)
            rows.append((args.q, m, eps, ch.capacity(), ch.capacity("bits")))
    _emit(args, argv, ["q", "M", "epsilon", "capacity_qary", "capacity_bits"], rows)
    return 0


def _cmd_threshold(args, argv):
    field = GF(args.q)
    degrees = DegreeDistribution.regular(args.dv, args.dc)
    rows = []
    for m in _parse_int_list(args.M, "--M"):
        for kind in _parse_models(args.model):
            cfg = DeConfig(
                channel=PartialErasureChannel(field, m, 0.0),
                degrees=degrees,
                size_model=_make_model(kind, args),
                max_iters=args.max_iters,
            )
            th = threshold_search(cfg, tol_eps=args.tol, check_monotone=args.check_monotone)
            rows.append((args.q, m, args.dv, args.dc, kind, th))
    _emit(args, argv, ["q", "M", "d_v", "d_c", "model", "epsilon_threshold"], rows)
    return 0


def _cmd_simulate(args, argv):
    field = GF(args.q)
    rows = []
    for m in _parse_int_list(args.M, "--M"):
        for eps in _parse_eps(args):
            report = run_trials(
                PartialErasureChannel(field, m, eps),
                n=args.n,
                d_v=args.dv,
                d_c=args.dc,
                trials=args.trials,
                max_iters=args.max_iters,
                seed=args.seed,
            )
            rows.append(
                (
                    args.q, m, args.dv, args.dc, args.n, eps,
                    report.trials, report.successes, report.success_rate,
                    report.avg_iterations, report.residual_symbol_error_rate,
                )
            )
    _emit(
        args,
        argv,
        [
            "q", "M", "d_v", "d_c", "n", "epsilon", "trials", "successes",
            "success_rate", "avg_iterations", "residual_symbol_error_rate",
        ],
        rows,
    )
    return 0


def _cmd_pm_table(args, argv):
    field = GF(args.q)
    sizes = _parse_int_list(args.sizes, "--sizes")
    if not sizes:
        raise CliError("--sizes must list at least one set size")
    rows = []
    for kind in _parse_models(args.model):
        model = _make_model(kind, args)
        dist = model.distribution(sizes, field)
        for m, p in enumerate(dist, start=1):
            rows.append((args.q, "+".join(str(s) for s in sizes), m, float(p), kind))
    _emit(args, argv, ["q", "sizes", "m", "probability", "model"], rows)
    return 0


def _cmd_decode_trace(args, argv):
    graph = TannerGraph.load(args.graph)
    field = graph.field
    with open(args.received) as fh:
        received = [SymbolSet.parse(field, line) for line in fh if line.strip()]
    result = decode(
        graph, received, max_iters=args.max_iters, record_messages=True
    )
    rows = []
    for v, s in enumerate(received):
        rows.append((0, "channel", "", v, "", str(s), len(s)))
    for it, (ctv, vtc) in enumerate(result.message_history):
        for kind, msgs in (("ctv", ctv), ("vtc", vtc)):
            if msgs is None:
                continue
            if it == 0 and kind == "vtc":
                continue  # iteration-0 edge messages repeat the channel rows
            for e in range(graph.n_edges):
                s = SymbolSet.from_mask(field, int(msgs[e]))
                rows.append(
                    (
                        it, kind, e,
                        int(graph.edge_var[e]), int(graph.edge_chk[e]),
                        str(s), len(s),
                    )
                )
    for v, s in enumerate(result.estimate):
        rows.append((result.iterations, "posterior", "", v, "", str(s), len(s)))
    rows.append((result.iterations, "status", "", "", "", result.status, ""))
    _emit(
        args,
        argv,
        ["iteration", "kind", "edge", "variable", "check", "message", "size"],
        rows,
    )
    return 0


# -- parser ------------------------------------------------------------------


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pecldpc",
        description="LDPC analysis tools for q-ary partial-erasure channels",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, *, seed=True, out=True):
        if seed:
            p.add_argument("--seed", type=int, default=0)
        if out:
            p.add_argument("--out", type=str, default=None, help="output CSV path")

    p = sub.add_parser("capacity", help="closed-form capacity over an epsilon grid")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--M", type=str, required=True, help="set size(s), comma separated")
    p.add_argument("--eps", type=float, default=None)
    p.add_argument("--eps-grid", type=str, default=None, help="start:stop:step")
    common(p)
    p.set_defaults(func=_cmd_capacity)

    p = sub.add_parser("threshold", help="density-evolution decoding thresholds")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--M", type=str, required=True, help="set size(s), comma separated")
    p.add_argument("--dv", type=int, required=True)
    p.add_argument("--dc", type=int, required=True)
    p.add_argument("--model", type=str, default=",".join(MODEL_KINDS))
    p.add_argument("--max-iters", type=int, default=2000)
    p.add_argument("--tol", type=float, default=1e-4, help="bisection tolerance")
    p.add_argument("--mc-samples", type=int, default=None)
    p.add_argument(
        "--check-monotone",
        action=argparse.BooleanOptionalAction,
        default=True,
        help="probe a grid to confirm convergence is monotone in epsilon",
    )
    common(p)
    p.set_defaults(func=_cmd_threshold)

    p = sub.add_parser("simulate", help="finite-length Monte Carlo decoding trials")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--M", type=str, required=True)
    p.add_argument("--dv", type=int, required=True)
    p.add_argument("--dc", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--eps", type=float, default=None)
    p.add_argument("--eps-grid", type=str, default=None, help="start:stop:step")
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--max-iters", type=int, default=100)
    common(p)
    p.set_defaults(func=_cmd_simulate)

    p = sub.add_parser("pm-table", help="sumset-size distribution tables")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--sizes", type=str, required=True, help="operand sizes, comma separated")
    p.add_argument("--model", type=str, default=",".join(MODEL_KINDS))
    p.add_argument("--mc-samples", type=int, default=None)
    common(p)
    p.set_defaults(func=_cmd_pm_table)

    p = sub.add_parser("decode-trace", help="replay one decoding run with full messages")
    p.add_argument("--graph", type=str, required=True, help="graph file ('q n m' header)")
    p.add_argument("--received", type=str, required=True, help="one set per line")
    p.add_argument("--max-iters", type=int, default=100)
    common(p)
    p.set_defaults(func=_cmd_decode_trace)

    return parser


def main(argv=None) -> int:
    if argv is None:
        argv = sys.argv[1:]
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args, list(argv))
    except EnumerationBudgetError as exc:
        print(
            f"error: {exc}\nhint: pass --mc-samples to approximate the exact "
            "model by Monte Carlo",
            file=sys.stderr,
        )
        return 3
    except (CliError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
