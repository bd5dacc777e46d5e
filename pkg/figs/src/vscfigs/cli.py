"""Command line entry point: one subcommand per figure kind.

    vscfigs spectrum results/eigen_stats.csv -o figures/spectrum.png
    vscfigs ratio_vs_n results/rates.csv -o figures/ratio_vs_n.png

Exit status: 0 on success, 2 when an input fails schema validation.
"""

from __future__ import annotations

import argparse
import sys

from .render import render
from .schemas import KINDS, FigureSpec, SchemaError

_INPUT_HELP = {
    "spectrum": "eigen_stats.csv path(s)",
    "pr_vs_n": "eigen_stats.csv path(s)",
    "ratio_vs_n": "rates.csv path(s)",
    "detuning": "rates.csv path(s)",
    "eyring": "eyring.csv path(s)",
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="vscfigs",
        description="Render figures from the simulation CSV outputs.")
    sub = parser.add_subparsers(dest="kind", required=True)
    for kind in KINDS:
        p = sub.add_parser(kind, help=f"render a {kind} figure")
        p.add_argument("inputs", nargs="+", metavar="CSV",
                       help=_INPUT_HELP[kind])
        p.add_argument("-o", "--output", required=True,
                       help="output PNG path")
        if kind == "spectrum":
            p.add_argument("--gaussian-mean", type=float, default=2000.0,
                           help="reference curve mean in cm^-1 "
                                "(default: %(default)s)")
            p.add_argument("--gaussian-sigma", type=float, default=10.0,
                           help="reference curve standard deviation in "
                                "cm^-1 (default: %(default)s)")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    options = {}
    if args.kind == "spectrum":
        options = {"gaussian_mean": args.gaussian_mean,
                   "gaussian_sigma": args.gaussian_sigma}
    try:
        spec = FigureSpec(inputs=tuple(args.inputs), kind=args.kind,
                          output=args.output)
        out = render(spec, **options)
    except SchemaError as err:
        print(f"error: {err}", file=sys.stderr)
        return 2
    print(out)
    return 0


if __name__ == "__main__":
    sys.exit(main())
