"""Command-line front end.

Exit codes: 0 success, 2 usage or validation error, 3 infeasible circle
parameters (overlapping arcs), 4 memory budget exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

from . import __version__
from .errors import CircleMethodError, ValidationError
from .geometry import DEFAULT_EPS, DEFAULT_LAMBDA, derive_params, enumerate_major_arcs
from .report import (
    CSV_COLUMNS,
    euler_bound_for,
    format_rows,
    plot_series,
    reports_to_json,
    run_verify,
    schedule,
)
from .representation import count_J_direct, count_R_convolution, count_R_direct, count_R_dft
from .singular import DEFAULT_Q, D_euler, D_series, G_euler, G_series


def _number(text: str):
    """Accept 1000000, 1e6 or 2.5e5; integral values come back as int."""
    try:
        return int(text)
    except ValueError:
        pass
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a number, got {text!r}") from None
    return int(value) if value.is_integer() else value


def _int(text: str) -> int:
    value = _number(text)
    if not isinstance(value, int):
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}")
    return value


def _emit(rows: list[dict], fmt: str, out=None, columns=None) -> None:
    out = out or sys.stdout
    if fmt == "json":
        payload = rows[0] if len(rows) == 1 else rows
        out.write(json.dumps({"version": __version__, "result": payload}, indent=2, sort_keys=True) + "\n")
    else:
        out.write(format_rows(rows, fmt, columns))


def cmd_singular(args) -> int:
    N = args.N
    if not args.g and (N % 2 or N < 4):
        raise ValidationError(f"D(N) needs even N >= 4, got {N}; use --g for G(N)")
    P = args.pmax if args.pmax is not None else euler_bound_for(N)
    series_fn, euler_fn = (G_series, G_euler) if args.g else (D_series, D_euler)
    row = {"N": N, "kind": "G" if args.g else "D"}
    s = e = None
    if not args.euler_only:
        s = series_fn(N, args.qmax)
        row.update(series=s.value, series_Q=s.truncation, series_tail=s.tail_bound)
    if not args.series_only:
        e = euler_fn(N, P)
        row.update(euler=e.value, euler_P=e.truncation, euler_tail=e.tail_bound)
    if s and e:
        row.update(difference=abs(s.value - e.value), agree=s.agrees_with(e))
    _emit([row], args.format)
    return 0


def cmd_count(args) -> int:
    N = args.N
    A = args.A if args.A is not None else (N // 4 if N % 4 == 0 else N / 4)
    if args.method == "direct":
        rc = count_R_direct(N, A, sample=args.sample)
    elif args.method == "conv":
        rc = count_R_convolution(N, A)
    else:
        rc = count_R_dft(N, A, args.M)
    J = count_J_direct(N, A) if A >= 3 else None
    row = {"N": N, "A": A, "method": rc.method.value, "weighted": rc.weighted, "unweighted": rc.unweighted}
    if J is not None:
        row.update(J=J.J, J_over_A2=J.over_A2, J_over_2A2=J.over_2A2)
    _emit([row], args.format)
    if args.sample and rc.solutions_sample and args.format != "json":
        for p1, p2, p3 in rc.solutions_sample:
            print(f"# {p1} + {p2} + 2*{p3} = {N}", file=sys.stderr)
    return 0


def _params_from(args):
    return derive_params(args.N, args.eps, args.lam, args.profile, A=args.A, Q=args.Q, tau=args.tau)


def cmd_arcs(args) -> int:
    profile = args.profile
    if profile is None:
        profile = "explicit" if args.tau is not None else "desk"
    args.profile = profile
    params = _params_from(args)
    partition = enumerate_major_arcs(params)
    if args.list:
        rows = [{"q": a.q, "a": a.a, "lo": a.interval[0], "hi": a.interval[1]} for a in partition.majors]
        _emit(rows, args.format)
        return 0
    row = dict(params.as_dict())
    row.update(arc_count=partition.count, major_measure=partition.major_measure,
               minor_measure=partition.minor_measure, two_Q_squared=2 * params.Q**2)
    _emit([row], args.format)
    return 0


def cmd_verify(args) -> int:
    if args.n:
        Ns = list(args.n)
        odd = [n for n in Ns if n % 2]
        if odd:
            raise ValidationError(f"schedule contains odd N: {odd}")
    else:
        Ns = schedule(args.n_start, args.n_end, args.count, args.schedule)

    def one(N):
        return run_verify(N, args.profile, eps=args.eps, lam=args.lam, A=args.A, Q=args.Q,
                          tau=args.tau, timings=args.timings)

    with ThreadPoolExecutor(max_workers=max(1, args.threads)) as pool:
        reports = list(pool.map(one, Ns))

    if args.format == "json":
        text = reports_to_json(reports)
    else:
        text = format_rows([r.flat() for r in reports], args.format, CSV_COLUMNS)
    if args.out:
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        (out / f"verify.{args.format}").write_text(text)
        for name, data in plot_series(reports).items():
            (out / name).write_text(data)
    else:
        sys.stdout.write(text)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="circlemethod", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("--threads", type=int, default=1, help="worker threads for multi-N runs")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_format(p, choices=("csv", "tsv", "json"), default="csv"):
        p.add_argument("--format", choices=choices, default=default)

    def add_geometry(p, profile_default):
        p.add_argument("--profile", choices=("paper", "desk", "explicit"), default=profile_default)
        p.add_argument("--eps", type=float, default=DEFAULT_EPS)
        p.add_argument("--lambda", dest="lam", type=float, default=DEFAULT_LAMBDA)
        p.add_argument("--A", type=_number)
        p.add_argument("--Q", type=_number)
        p.add_argument("--tau", type=float)

    p = sub.add_parser("singular", help="D(N) or G(N) by series and Euler product")
    p.add_argument("N", type=_int)
    p.add_argument("--qmax", type=_int, default=DEFAULT_Q)
    p.add_argument("--pmax", type=_int)
    only = p.add_mutually_exclusive_group()
    only.add_argument("--series-only", action="store_true")
    only.add_argument("--euler-only", action="store_true")
    p.add_argument("--g", action="store_true", help="evaluate G(N) instead of D(N)")
    add_format(p)
    p.set_defaults(func=cmd_singular)

    p = sub.add_parser("count", help="weighted and unweighted R(N, A)")
    p.add_argument("N", type=_int)
    p.add_argument("--A", type=_number)
    p.add_argument("--method", choices=("direct", "conv", "dft"), default="conv")
    p.add_argument("--M", type=_int, help="DFT grid size (default: smallest power of two > N + 4A)")
    p.add_argument("--sample", type=int, default=0, help="print up to this many solutions (direct)")
    add_format(p)
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("arcs", help="circle parameters and the major-arc partition")
    p.add_argument("N", type=_int)
    add_geometry(p, None)
    p.add_argument("--list", action="store_true", help="one row per major arc")
    add_format(p)
    p.set_defaults(func=cmd_arcs)

    p = sub.add_parser("verify", help="end-to-end reports over a schedule of N")
    p.add_argument("--n-start", type=_int, default=10**4)
    p.add_argument("--n-end", type=_int, default=10**6)
    p.add_argument("--count", type=int, default=3)
    p.add_argument("--schedule", choices=("geometric", "arithmetic"), default="geometric")
    p.add_argument("--n", type=_int, nargs="+", help="explicit list of N (overrides the schedule)")
    add_geometry(p, "desk")
    p.add_argument("--out", help="directory for verify.<format> and two-column .dat files")
    p.add_argument("--timings", action="store_true", help="record wall-clock stage timings (output no longer reproducible)")
    add_format(p)
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except CircleMethodError as exc:
        print(f"circlemethod {args.command}: error: {exc}", file=sys.stderr)
        return exc.exit_code


if __name__ == "__main__":
    sys.exit(main())
