"""Command-line front end.

Exit codes: 0 success, 1 a verification found a mathematical mismatch,
2 invalid invocation or a computation over the block-size cap.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from typing import Sequence

from .ce import BlockTooLarge, betti_oracle
from .core import Surface
from .engine import (
    FAMILIES,
    PARITIES,
    K_series,
    Report,
    V_series,
    master_series,
    polynomial_fit,
    resolve,
)
from .series import S_series, X_series, render_text
from .verify import (
    stable_table_rows,
    verify_figures,
    verify_oracle,
    verify_recurrences,
)

FORMATS = ("plain", "csv", "json", "markdown")
SERIES = ("K", "X", "S", "V", "P_st", "P_0", "P_1")


class UsageError(Exception):
    pass


def _rat(c) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def render_rows(headers: Sequence[str], rows: Sequence[Sequence], fmt: str) -> str:
    """Plain, csv or markdown rendering of a table of strings."""
    rows = [[str(c) for c in r] for r in rows]
    headers = [str(h) for h in headers]
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(headers)
        w.writerows(rows)
        return buf.getvalue()
    if fmt == "markdown":
        lines = ["| " + " | ".join(headers) + " |", "|" + "---|" * len(headers)]
        lines += ["| " + " | ".join(r) + " |" for r in rows]
        return "\n".join(lines) + "\n"
    widths = [max(len(x) for x in col) for col in zip(headers, *rows)]
    fmt_row = lambda r: "  ".join(c.rjust(w) for c, w in zip(r, widths)).rstrip()  # noqa: E731
    return "\n".join([fmt_row(headers)] + [fmt_row(r) for r in rows]) + "\n"


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=False) + "\n"


def _surface(args) -> Surface:
    try:
        if args.closed_orientable is not None:
            return Surface.closed_orientable(args.closed_orientable)
        if args.open_orientable is not None:
            return Surface.open_orientable(*args.open_orientable)
        if args.closed_nonorientable is not None:
            return Surface.closed_nonorientable(args.closed_nonorientable)
        return Surface.open_nonorientable(*args.open_nonorientable)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def cmd_betti(args) -> tuple[str, int]:
    s = _surface(args)
    if args.i < 0 or args.k < 0:
        raise UsageError("-i and -k must be nonnegative")
    if args.oracle:
        value = betti_oracle(s, args.i, args.k, args.max_block_dim)[args.i, args.k]
        prov = "oracle"
    else:
        value, prov = resolve(s, args.i, args.k)
    if args.format == "json":
        return _dump({"surface": s.to_dict(), "i": args.i, "k": args.k,
                      "betti": str(value), "provenance": prov}), 0
    if args.format == "plain":
        return f"{value} ({prov})\n", 0
    return render_rows(["surface", "i", "k", "betti", "provenance"],
                       [[s.name, args.i, args.k, value, prov]], args.format), 0


def cmd_stable_table(args) -> tuple[str, int]:
    if args.max_g < 0 or args.max_i < 0:
        raise UsageError("--max-g and --max-i must be nonnegative")
    rows = stable_table_rows(args.max_g, args.max_i, args.path)
    genera = list(range(args.max_g + 1))
    if args.format == "json":
        return _dump({"genera": genera, "rows": [
            {"i": r[0], "betti": [str(v) for v in r[1:]]} for r in rows]}), 0
    return render_rows(["i"] + [str(g) for g in genera], rows, args.format), 0


def cmd_polys(args) -> tuple[str, int]:
    if args.g < 0:
        raise UsageError("-g must be nonnegative")
    families = list(FAMILIES) if args.family == "all" else [args.family]
    fits = [polynomial_fit(args.g, f, p) for f in families for p in PARITIES]
    if args.format == "json":
        return _dump([{"label": f.label, "family": f.family, "parity": f.parity,
                       "polynomial": f.render(),
                       "coefficients": [_rat(c) for c in f.coeffs]} for f in fits]), 0
    if args.format == "plain":
        return "".join(f"{f.label} = {f.render()}\n" for f in fits), 0
    return render_rows(["label", "family", "parity", "polynomial"],
                       [[f.label, f.family, f.parity, f.render()] for f in fits], args.format), 0


def cmd_series(args) -> tuple[str, int]:
    g, T = args.g, args.trunc
    if g < 0 or T < 0:
        raise UsageError("-g and --trunc must be nonnegative")
    if args.which == "K":
        a = K_series(g, T)
    elif args.which == "X":
        a = X_series(g, T)
    elif args.which == "S":
        a = S_series(T)
    elif args.which == "V":
        if args.n is None or args.n < 0:
            raise UsageError("series V needs -n >= 0")
        a = V_series(g, args.n, T)
    else:
        a = master_series(g, args.which, T)
    if args.format == "json":
        return _dump({"series": args.which, "g": g, "n": args.n, "trunc": T,
                      "coefficients": a.to_json()}), 0
    if args.format == "plain":
        return f"{render_text(a)} + O(t^{T + 1})\n", 0
    return render_rows(["degree", "coefficient"],
                       [[j, _rat(c)] for j, c in enumerate(a.coeffs)], args.format), 0


def cmd_verify(args) -> tuple[str, int]:
    for name in ("max_g", "max_k", "trunc"):
        v = getattr(args, name)
        if v is not None and v < 0:
            raise UsageError(f"--{name.replace('_', '-')} must be nonnegative")
    suites = ["figures", "oracle", "recurrences"] if args.suite == "all" else [args.suite]
    report = Report()
    for suite in suites:
        if suite == "figures":
            part = verify_figures()
        elif suite == "oracle":
            part = verify_oracle(2 if args.max_g is None else args.max_g,
                                 6 if args.max_k is None else args.max_k,
                                 args.max_block_dim)
        else:
            part = verify_recurrences(8 if args.max_g is None else args.max_g,
                                      40 if args.trunc is None else args.trunc)
        report.results.extend(part.results)
    if args.format == "json":
        out = _dump({"passed": report.passed, "checks": [
            {"name": r.name, "passed": r.passed, "detail": r.detail} for r in report.results]})
    elif args.format == "plain":
        out = report.render() + "\n"
        if not report.passed:
            out += "\nmismatches:\n" + "".join(f"  {r.name}: {r.detail}\n"
                                               for r in report.failures())
    else:
        out = render_rows(["check", "status", "detail"],
                          [[r.name, "PASS" if r.passed else "FAIL", r.detail]
                           for r in report.results], args.format)
    return out, 0 if report.passed else 1


def _add_surface_flags(p: argparse.ArgumentParser) -> None:
    grp = p.add_mutually_exclusive_group(required=True)
    grp.add_argument("--closed-orientable", type=int, metavar="G")
    grp.add_argument("--open-orientable", type=int, nargs=2, metavar=("G", "N"))
    grp.add_argument("--closed-nonorientable", type=int, metavar="H")
    grp.add_argument("--open-nonorientable", type=int, nargs=2, metavar=("H", "N"))


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=FORMATS, default="plain")
    common.add_argument("--max-block-dim", type=int, default=None,
                        help="cap on CE block dimension (env CONFBETTI_MAX_BLOCK_DIM)")

    parser = argparse.ArgumentParser(
        prog="confbetti", description="Betti numbers of configuration spaces of surfaces.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("betti", parents=[common], help="one Betti number")
    _add_surface_flags(p)
    p.add_argument("-i", type=int, required=True, help="homological degree")
    p.add_argument("-k", type=int, required=True, help="number of points")
    p.add_argument("--oracle", action="store_true", help="compute from the CE complex")
    p.set_defaults(func=cmd_betti)

    p = sub.add_parser("stable-table", parents=[common], help="stable Betti numbers of Sigma_g")
    p.add_argument("--max-g", type=int, default=6)
    p.add_argument("--max-i", type=int, default=43)
    p.add_argument("--path", choices=("series", "formula"), default="series")
    p.set_defaults(func=cmd_stable_table)

    p = sub.add_parser("polys", parents=[common], help="fixed-genus polynomials")
    p.add_argument("-g", type=int, required=True)
    p.add_argument("--family", choices=tuple(FAMILIES) + ("all",), default="all")
    p.set_defaults(func=cmd_polys)

    p = sub.add_parser("series", parents=[common], help="truncated generating series")
    p.add_argument("which", choices=SERIES)
    p.add_argument("-g", type=int, required=True)
    p.add_argument("-n", type=int, default=None, help="boundary index for V")
    p.add_argument("--trunc", type=int, default=20)
    p.set_defaults(func=cmd_series)

    p = sub.add_parser("verify", parents=[common], help="run verification suites")
    p.add_argument("suite", choices=("figures", "oracle", "recurrences", "all"),
                   help="figures: published stable table and polynomial fixtures")
    p.add_argument("--max-g", type=int, default=None)
    p.add_argument("--max-k", type=int, default=None)
    p.add_argument("--trunc", type=int, default=None)
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        out, code = args.func(args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"confbetti: error: {exc}", file=sys.stderr)
        return 2
    except BlockTooLarge as exc:
        print(f"confbetti: over cap: {exc}", file=sys.stderr)
        return 2
    sys.stdout.write(out)
    return code


if __name__ == "__main__":
    sys.exit(main())
