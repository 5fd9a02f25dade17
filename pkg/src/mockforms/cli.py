"""Command line: ``mockforms expand | verify | suite | list``."""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import classical, potential
from .checks import REGISTRY, make_spec, run_spec
from .errors import ConfigError, MockFormsError
from .gaussian import GaussianRational
from .qseries import QSeries, dumps
from .suite import EXIT_CONFIG, EXIT_FAIL, EXIT_PASS, render, run_suite

SERIES = {
    "eta": (classical.eta, "Dedekind eta"),
    "eta3": (classical.eta_cubed, "eta^3"),
    "E2": (lambda n: classical.eisenstein(2, n), "Eisenstein series of weight 2"),
    "E4": (lambda n: classical.eisenstein(4, n), "Eisenstein series of weight 4"),
    "E6": (lambda n: classical.eisenstein(6, n), "Eisenstein series of weight 6"),
    "c_y": (potential.c_y_def, "coefficient of y^3"),
    "c_yz2": (potential.c_yz2_def_total, "coefficient of y^2 z^2"),
    "c_yz2_1": (lambda n: potential.c_yz2_def(n)[0], "first piece of c_yz2"),
    "c_yz2_2": (lambda n: potential.c_yz2_def(n)[1], "second piece of c_yz2"),
    "c_yz4": (potential.c_yz4_def, "coefficient of y z^4"),
    "c_yz2_closed": (potential.c_yz2_closed, "q^(1/12) c_yz2 through theta and mu"),
    "c_yz4_closed": (potential.c_yz4_closed, "c_yz4 through theta and mu"),
}


def _latex_coeff(c: GaussianRational) -> str:
    def frac(x: Fraction) -> str:
        if x.denominator == 1:
            return str(x.numerator)
        sign = "-" if x < 0 else ""
        return f"{sign}\\tfrac{{{abs(x.numerator)}}}{{{x.denominator}}}"
    if not c.im:
        return frac(c.re)
    if not c.re:
        return frac(c.im) + "i"
    return f"{frac(c.re)} {'+' if c.im > 0 else '-'} {frac(abs(c.im))}i"


def latex_table(name: str, s: QSeries) -> str:
    rows = ["\\begin{tabular}{rr}", f"\\multicolumn{{2}}{{l}}{{{name}}} \\\\",
            "exponent & coefficient \\\\ \\hline"]
    for k, c in s.items():
        rows.append(f"$q^{{{Fraction(k, s.denom)}}}$ & ${_latex_coeff(c)}$ \\\\")
    trunc = "\\infty" if s.order is None else str(s.order)
    rows.append(f"\\multicolumn{{2}}{{l}}{{$+\\,O(q^{{{trunc}}})$}} \\\\")
    rows.append("\\end{tabular}")
    return "\n".join(rows) + "\n"


def cmd_expand(args) -> int:
    fn, _ = SERIES[args.name]
    s = fn(args.order)
    sys.stdout.write(latex_table(args.name, s) if args.latex else dumps(s))
    return EXIT_PASS


def cmd_verify(args) -> int:
    if args.check not in REGISTRY:
        print(f"unknown check {args.check!r}; see `mockforms list`", file=sys.stderr)
        return EXIT_CONFIG
    try:
        spec = make_spec(args.check, order=args.order, n_samples=args.samples, seed=args.seed, tol=args.tol)
    except ValueError as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_CONFIG
    rep = run_spec(spec)
    sys.stdout.write(render([rep], record_timing=args.timing))
    return EXIT_PASS if rep.passed else EXIT_FAIL


def cmd_suite(args) -> int:
    text = ""
    if args.config:
        try:
            with open(args.config, encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            print(f"cannot read config: {exc}", file=sys.stderr)
            return EXIT_CONFIG
    try:
        code, reports = run_suite(text, args.out)
    except ConfigError as exc:
        print(f"{args.config}: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    for rep in reports:
        print(f"{rep.status:5s}  {rep.spec.name}")
    n_pass = sum(r.passed for r in reports)
    print(f"{n_pass}/{len(reports)} passed" + (f"; report written to {args.out}" if args.out else ""))
    return code


def cmd_list(args) -> int:
    width = max(len(n) for n in REGISTRY)
    for name, check in REGISTRY.items():
        print(f"{name:{width}s}  {check.mode:9s}  {check.summary}")
    if args.series:
        print()
        for name, (_, desc) in SERIES.items():
            print(f"{name:{width}s}  series     {desc}")
    return EXIT_PASS


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="mockforms", description="Exact q-series and mock modular identity checks.")
    sub = p.add_subparsers(dest="command", required=True)

    e = sub.add_parser("expand", help="print a named q-series")
    e.add_argument("name", choices=sorted(SERIES))
    e.add_argument("--order", type=int, required=True)
    e.add_argument("--latex", action="store_true", help="LaTeX table instead of the text format")
    e.set_defaults(func=cmd_expand)

    v = sub.add_parser("verify", help="run one registered check")
    v.add_argument("check")
    v.add_argument("--order", type=int)
    v.add_argument("--samples", type=int)
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--tol", type=float)
    v.add_argument("--timing", action="store_true", help="keep runtime_ms in the record")
    v.set_defaults(func=cmd_verify)

    s = sub.add_parser("suite", help="run the registered checks from a config")
    s.add_argument("--config", help="JSON config (default: every check at its default settings)")
    s.add_argument("--out", help="path of the JSON report")
    s.set_defaults(func=cmd_suite)

    ls = sub.add_parser("list", help="list registered checks")
    ls.add_argument("--series", action="store_true", help="also list expandable series")
    ls.set_defaults(func=cmd_list)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if getattr(args, "order", None) is not None and args.order < 0:
        print("--order must be >= 0", file=sys.stderr)
        return EXIT_CONFIG
    try:
        return args.func(args)
    except MockFormsError as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
