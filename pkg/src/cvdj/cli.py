"""Command-line entry point: ``cvdj <subcommand> [options]``.

Results go to stdout (or ``--output``) as JSON or CSV; errors go to
stderr with exit status 1. Unknown subcommands exit with status 2.
"""

from __future__ import annotations

import argparse
import io
import json
import math
import sys
from pathlib import Path

import numpy as np

from . import amplification as amp
from .asb import verify_asb_dominance
from .bitstrings import BitString, classify
from .dv import dj_run
from .encoding import CVParams, encode, encoded_momentum, grid_sample
from .figures import fmt, reproduce_figures
from .measurement import Window, optimal_delta, window_probability
from .wavefunction import pdf, wavefunction


class Table:
    def __init__(self, header, rows):
        self.header = tuple(header)
        self.rows = [tuple(r) for r in rows]


def _jsonable(value):
    if isinstance(value, dict):
        return {k: _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if hasattr(value, "item"):
        return value.item()
    return value


def render(result, fmt_name: str) -> str:
    if fmt_name == "json":
        if isinstance(result, Table):
            result = {h: [r[i] for r in result.rows] for i, h in enumerate(result.header)}
        return json.dumps(_jsonable(result), separators=(",", ":")) + "\n"
    if isinstance(result, dict):
        if "reports" in result:
            rows = result["reports"]
            result = Table(rows[0].keys(), [r.values() for r in rows])
        else:
            result = Table(result.keys(), [result.values()])
    buf = io.StringIO()
    buf.write(",".join(result.header) + "\n")
    for row in result.rows:
        buf.write(",".join(fmt("" if v is None else v) for v in row) + "\n")
    return buf.getvalue()


def _bits(text: str) -> BitString:
    return BitString.parse(text)


def cmd_dv_run(args):
    length = len(args.z.strip())
    if length < 2 or length & (length - 1):
        raise ValueError(f"length must be a power of two, got {length}")
    z = _bits(args.z)
    prob = dj_run(z)
    return {"n": z.N.bit_length() - 1, "class": classify(z).value, "prob_zero": prob}


def cmd_cv_encode(args):
    z = _bits(args.z)
    params = CVParams(z.N, args.P)
    p, value = grid_sample(encoded_momentum(z, params), args.samples)
    return Table(("p", "encoded", "value"), zip(p, encode(z, params, p).astype(int), value))


def cmd_cv_pdf(args):
    z = _bits(args.z)
    if args.points < 2:
        raise ValueError(f"points must be >= 2, got {args.points}")
    if not args.xmin < args.xmax:
        raise ValueError(f"xmin must be below xmax, got {args.xmin} >= {args.xmax}")
    x = np.linspace(args.xmin, args.xmax, args.points)
    density = pdf(wavefunction(z, CVParams(z.N, args.P)))(x)
    return Table(("x", "pdf"), zip(x, density))


def cmd_cv_prob(args):
    z = _bits(args.z)
    if not args.delta > 0:
        raise ValueError(f"delta must be positive, got {args.delta}")
    density = pdf(wavefunction(z, CVParams(z.N, args.P)))
    return {"prob": window_probability(density, Window.symmetric(args.delta))}


def cmd_optimal_delta(args):
    delta = optimal_delta(args.P)
    return {"delta": delta, "P_delta_product": args.P * delta}


def cmd_asb_check(args):
    res = verify_asb_dominance(args.N, args.grid)
    witness = None if res.witness is None else {"z": res.witness[0], "x": res.witness[1]}
    return {"holds": res.holds, "worst_margin": res.worst_margin, "witness": witness}


def cmd_amplify(args):
    model = amp.QueryModel.illustrative() if args.illustrative else amp.QueryModel.from_window(args.P)
    reports = amp.monte_carlo_error(model, args.m, args.runs, seed=args.seed)
    return {
        "p_detect_constant": model.p_detect_constant,
        "p_detect_balanced": model.p_detect_balanced,
        "illustrative": model.illustrative_mode,
        "success_bound": amp.success_bound(args.m),
        "reports": [r.to_dict() for r in reports],
    }


def cmd_classical_baseline(args):
    if args.m < 1:
        raise ValueError(f"query count m must be >= 1, got {args.m}")
    return {
        "exact": amp.classical_probabilistic_bound(args.N, args.m),
        "lower_bound": 1.0 - 0.5**args.m,
    }


def cmd_reproduce_figures(args):
    outdir = args.output or "figures"
    paths = reproduce_figures(outdir)
    return {"files": [str(p) for p in paths]}


def build_parser() -> argparse.ArgumentParser:
    def global_flags(suppress: bool) -> argparse.ArgumentParser:
        # subcommand copies must not reset values given before the subcommand
        flags = argparse.ArgumentParser(add_help=False)
        dflt = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
        flags.add_argument("--format", choices=("json", "csv"), default=dflt(None))
        flags.add_argument(
            "--output", default=dflt(None), help="output file (directory for reproduce-figures)"
        )
        flags.add_argument("--seed", type=int, default=dflt(0))
        return flags

    common = global_flags(suppress=True)
    parser = argparse.ArgumentParser(
        prog="cvdj", description=__doc__.splitlines()[0], parents=[global_flags(suppress=False)]
    )
    sub = parser.add_subparsers(dest="command", metavar="command", required=True)

    def add(name, func, help, default_format="json"):
        p = sub.add_parser(name, parents=[common], help=help)
        p.set_defaults(func=func, default_format=default_format)
        return p

    p = add("dv-run", cmd_dv_run, "exact DV Deutsch-Jozsa probability of |0...0>")
    p.add_argument("--z", required=True)

    p = add("cv-encode", cmd_cv_encode, "sampled encoded momentum signal", "csv")
    p.add_argument("--z", required=True)
    p.add_argument("--P", type=float, default=1.0)
    p.add_argument("--samples", type=int, default=256)

    p = add("cv-pdf", cmd_cv_pdf, "position density on a grid", "csv")
    p.add_argument("--z", required=True)
    p.add_argument("--P", type=float, default=1.0)
    p.add_argument("--xmin", type=float, default=-4 * math.pi)
    p.add_argument("--xmax", type=float, default=4 * math.pi)
    p.add_argument("--points", type=int, default=801)

    p = add("cv-prob", cmd_cv_prob, "window detection probability")
    p.add_argument("--z", required=True)
    p.add_argument("--P", type=float, default=1.0)
    p.add_argument("--delta", type=float, required=True)

    p = add("optimal-delta", cmd_optimal_delta, "optimal window half-width")
    p.add_argument("--P", type=float, default=1.0)

    p = add("asb-check", cmd_asb_check, "brute-force ASB dominance check")
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--grid", type=int, default=2001)

    p = add("amplify", cmd_amplify, "Monte Carlo error of repeated queries")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--runs", type=int, default=100_000)
    p.add_argument("--P", type=float, default=1.0)
    p.add_argument("--illustrative", action="store_true", help="use detection probabilities 3/4 and 1/4")

    p = add("classical-baseline", cmd_classical_baseline, "classical sampling success probability")
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--m", type=int, required=True)

    add("reproduce-figures", cmd_reproduce_figures, "write figure CSVs into --output DIR")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        result = args.func(args)
    except (ValueError, OSError, ArithmeticError) as exc:
        print(f"cvdj {args.command}: error: {exc}", file=sys.stderr)
        return 1
    if args.command == "reproduce-figures":
        text = render(result, args.format or "json")
        sys.stdout.write(text)
        return 0
    text = render(result, args.format or args.default_format)
    if args.output:
        try:
            Path(args.output).write_text(text, encoding="utf-8", newline="\n")
        except OSError as exc:
            print(f"cvdj {args.command}: error: cannot write {args.output}: {exc}", file=sys.stderr)
            return 1
    else:
        sys.stdout.write(text)
    return 0


if __name__ == "__main__":
    sys.exit(main())
