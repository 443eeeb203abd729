"""Command-line front end.

Exit codes: 0 success, 1 acceptance failure, 2 usage error, 3 resource
error, 4 data-format error.
"""
from __future__ import annotations

import argparse
import logging
import sys

from . import config, tables
from .cache import CacheFormatError, cache_read, cache_write

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_RESOURCE, EXIT_FORMAT = 0, 1, 2, 3, 4


class DataFormatError(ValueError):
    pass


def _decades(text: str) -> list[int]:
    lo, _, hi = text.partition(":")
    lo, hi = int(lo), int(hi or lo)
    if lo < 0 or hi < lo:
        raise argparse.ArgumentTypeError(f"bad decade range {text!r}, expected LO:HI")
    return [10**k for k in range(lo, hi + 1)]


def _floats(text: str) -> list[float]:
    return [float(t) for t in text.split(",") if t]


def _x_values(args) -> list[int]:
    if args.decades:
        return args.decades
    if args.x is None:
        raise ValueError("give --x or --decades")
    return [args.x]


def _emit(args, rows, schema):
    text = tables.render(rows, schema, args.format)
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _write_plot(path, pairs, label):
    with open(path, "w") as fh:
        fh.write(f"# x {label}\n")
        for x, y in pairs:
            fh.write(f"{x!r} {y!r}\n")


def _write_svg(path, pairs, title):
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    fig, ax = plt.subplots(figsize=(5, 4))
    xs, ys = zip(*pairs)
    ax.loglog(xs, ys, "o-")
    ax.set_xlabel("x")
    ax.set_title(title)
    fig.tight_layout()
    fig.savefig(path, format="svg")
    plt.close(fig)


def cmd_seq(args):
    from .exact import b_sieve, sequence_arrays

    if args.from_cache:
        if not args.cache:
            raise ValueError("--from-cache needs --cache or CANNONBALL_CACHE")
        _emit(args, [{"n": n, "a": a} for n, a in cache_read(args.cache)], "cache")
        return EXIT_OK
    if args.x is None:
        raise ValueError("seq needs --x")
    lo = args.lo
    P, root, a = sequence_arrays(lo, args.x)
    ns = range(lo, args.x + 1)
    rows = [{"n": n, "P": int(p), "root": int(r), "a": int(v)}
            for n, p, r, v in zip(ns, P.tolist(), root.tolist(), a.tolist())]
    schema = "sequence"
    if args.with_b:
        b = b_sieve(max(args.x, 1))
        for row in rows:
            row["b"] = int(b[row["n"]]) if row["n"] >= 1 else 0
        schema = "sequence_b"
    if args.cache:
        cache_write(args.cache, ((row["n"], row["a"]) for row in rows))
        logging.info("wrote %d records to %s", len(rows), args.cache)
    _emit(args, rows, schema)
    return EXIT_OK


def cmd_avg(args):
    from .averages import APQuery, average_a_ap

    reports = [average_a_ap(APQuery(args.b, args.q, x)) for x in _x_values(args)]
    pairs = [(r.x, abs(r.raw_sum - r.main_term * r.x)) for r in reports]
    if args.plot:
        _write_plot(args.plot, pairs, "|M(b,q,x) - main|")
    if args.svg:
        _write_svg(args.svg, pairs, f"|M - main|, b={args.b % args.q}, q={args.q}")
    _emit(args, [r.row() for r in reports], "average")
    return EXIT_OK


def cmd_twist(args):
    from .characters import characters, twisted_sum

    chars = characters(args.q)
    if args.chi is not None:
        if not 0 <= args.chi < len(chars):
            raise ValueError(f"--chi must lie in [0, {len(chars) - 1}] for q={args.q}")
        chars = [chars[args.chi]]
    rows = [twisted_sum(chi, x).row() for chi in chars for x in _x_values(args)]
    _emit(args, rows, "twist")
    return EXIT_OK


def cmd_equi(args):
    from .equidist import erdos_turan_bound, frac_family, kn_bound, star_discrepancy

    if args.kn:
        if args.end is None:
            raise ValueError("--kn needs --end")
        rows = []
        for m in args.m:
            cmp = kn_bound(args.start, args.end, args.q, m)
            rows.append({"start": args.start, "end": args.end, "q": args.q, "m": m,
                         "measured": cmp.measured, "bound": cmp.bound,
                         "satisfied": cmp.satisfied})
        _emit(args, rows, "kn")
        return EXIT_OK
    sample = frac_family(args.start, args.q, args.b, args.N)
    cmp = erdos_turan_bound(sample, args.K)
    row = {"N": args.N, "q": args.q, "b": args.b % args.q, "start": args.start,
           "D_star": star_discrepancy(sample), "D": cmp.measured_normalized,
           "ET_bound_K": cmp.bound, "satisfied": cmp.satisfied}
    _emit(args, [row], "discrepancy")
    return EXIT_OK


def cmd_series(args):
    from . import series
    from .characters import characters

    kind = args.kind
    if kind == "cesaro":
        rows = [series.cesaro_B(x).row() for x in _x_values(args)]
        _emit(args, rows, "cesaro")
        return EXIT_OK
    if kind in ("residue", "residue-H"):
        probes = series.residue_probe(args.s, args.N, "H" if kind == "residue-H" else "F")
        _emit(args, [p.row() for p in probes], "residue")
        return EXIT_OK
    rows = []
    for s in args.s:
        if kind == "zeta":
            rows.append({"series_id": "zeta_real", "s": s, "N": 0,
                         "re": series.zeta_real(s), "im": 0.0})
        elif kind == "F-via-G":
            rows.append({"series_id": "F_via_G", "s": s, "N": args.N,
                         "re": series.F_via_G(s, args.N), "im": 0.0})
        elif kind == "Fchi":
            chars = characters(args.q)
            chi = chars[args.chi or 0]
            rows.append(series.partial_F_chi(chi, s, args.N).row())
        else:
            fn = {"F": series.partial_F, "G": series.partial_G, "H": series.partial_H,
                  "zeta-partial": series.zeta_partial}[kind]
            rows.append(fn(s, args.N).row())
    _emit(args, rows, "series")
    return EXIT_OK


def cmd_fit(args):
    from .fit import fit_exponent

    try:
        text = sys.stdin.read() if args.table == "-" else open(args.table).read()
        points = tables.read_columns(text, args.xcol, args.ycol)
    except (OSError, ValueError, KeyError) as exc:
        raise DataFormatError(f"cannot read {args.table}: {exc}") from exc
    points = [(x, abs(y)) for x, y in points] if args.abs else points
    _emit(args, [fit_exponent(points).row()], "fit")
    return EXIT_OK


def cmd_verify(args):
    from .verify import render_report, run_verify

    only = set(args.only) if args.only else None
    code, report = run_verify(config.current(), only)
    text = render_report(report)
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    for entry in report["criteria"]:
        status = "PASS" if entry["passed"] else "FAIL"
        print(f"[{status}] {entry['id']:2d} {entry['name']}", file=sys.stderr)
    return code


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("csv", "json"), default="csv")
    common.add_argument("--cache", default=None,
                        help="binary sequence cache path (overrides $CANNONBALL_CACHE)")
    common.add_argument("--workers", type=int, default=1)
    common.add_argument("--precision-bits", type=int, default=96)
    common.add_argument("--memory-budget", type=int, default=config.DEFAULT_MEMORY_BUDGET,
                        help="bytes")
    common.add_argument("--output", "-o", default=None)
    common.add_argument("--verbose", "-v", action="store_true")

    parser = argparse.ArgumentParser(
        prog="cannonball",
        description="Distance from square pyramidal numbers to the nearest square.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("seq", parents=[common], help="generate or cache a_n (and b_n)")
    p.add_argument("--x", type=int)
    p.add_argument("--lo", type=int, default=0)
    p.add_argument("--with-b", action="store_true")
    p.add_argument("--from-cache", action="store_true")
    p.set_defaults(func=cmd_seq)

    p = sub.add_parser("avg", parents=[common], help="A(x) and A(b,q,x) tables")
    p.add_argument("--x", type=int)
    p.add_argument("--q", type=int, default=1)
    p.add_argument("--b", type=int, default=0)
    p.add_argument("--decades", type=_decades)
    p.add_argument("--plot", help="two-column data file for gnuplot")
    p.add_argument("--svg", help="log-log residual plot (needs matplotlib)")
    p.set_defaults(func=cmd_avg)

    p = sub.add_parser("twist", parents=[common], help="character-twisted sums")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--chi", type=int)
    p.add_argument("--x", type=int)
    p.add_argument("--decades", type=_decades)
    p.set_defaults(func=cmd_twist)

    p = sub.add_parser("equi", parents=[common], help="discrepancy and exponential-sum bounds")
    p.add_argument("--N", type=int, default=1000)
    p.add_argument("--q", type=int, default=1)
    p.add_argument("--b", type=int, default=0)
    p.add_argument("--start", type=int, default=1)
    p.add_argument("--end", type=int)
    p.add_argument("--K", type=int, default=100)
    p.add_argument("--m", type=int, nargs="+", default=[1])
    p.add_argument("--kn", action="store_true", help="second-derivative bound on a block")
    p.set_defaults(func=cmd_equi)

    p = sub.add_parser("series", parents=[common], help="zeta, F/G/H/F_chi, residues, B(x)")
    p.add_argument("--kind", required=True,
                   choices=("zeta", "zeta-partial", "F", "G", "H", "F-via-G", "Fchi",
                            "residue", "residue-H", "cesaro"))
    p.add_argument("--s", type=_floats, default=[3.0], help="comma-separated")
    p.add_argument("--N", type=int, default=10**4)
    p.add_argument("--q", type=int, default=1)
    p.add_argument("--chi", type=int)
    p.add_argument("--x", type=int)
    p.add_argument("--decades", type=_decades)
    p.set_defaults(func=cmd_series)

    p = sub.add_parser("fit", parents=[common], help="log-log exponent fit of a table")
    p.add_argument("table", help="CSV or JSON file, or - for stdin")
    p.add_argument("--xcol", default="x")
    p.add_argument("--ycol", default="residual")
    p.add_argument("--abs", action="store_true", help="fit |y| instead of y")
    p.set_defaults(func=cmd_fit)

    p = sub.add_parser("verify", parents=[common], help="run the acceptance suite")
    p.add_argument("--only", type=int, nargs="+", help="criterion ids to run")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    args.cache = config.resolve_cache_path(args.cache)
    try:
        cfg = config.RunConfig(
            cache_path=args.cache,
            memory_budget_bytes=args.memory_budget,
            worker_count=args.workers,
            output_format=args.format,
            precision_bits=args.precision_bits,
        )
        with config.using(cfg):
            return args.func(args)
    except config.ResourceError as exc:
        print(f"resource error: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except (CacheFormatError, DataFormatError) as exc:
        print(f"data format error: {exc}", file=sys.stderr)
        return EXIT_FORMAT
    except (ValueError, ArithmeticError) as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
