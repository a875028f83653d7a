#!/usr/bin/env python3
"""Run the random-ensemble experiment and write per-trial CSV plus a summary.

Equivalent to `greensfn experiment` but convenient for scripted sweeps:

    python scripts/run_experiment.py --n 10 --trials 50 --seed 0 --out runs/n10.csv
"""

import argparse
import sys
from pathlib import Path

from greensfn.cli import main as cli_main


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--n", type=int, required=True)
    parser.add_argument("--trials", type=int, required=True)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--t-grid", type=float, nargs="+", default=[1.0, -1.0])
    parser.add_argument("--no-bounds", action="store_true")
    parser.add_argument("--out", type=Path, default=None)
    args = parser.parse_args()

    argv = ["--seed", str(args.seed)]
    if args.out is not None:
        args.out.parent.mkdir(parents=True, exist_ok=True)
        argv += ["--output", str(args.out)]
    argv += ["experiment", "--n", str(args.n), "--trials", str(args.trials)]
    argv += ["--t-grid"] + [str(t) for t in args.t_grid]
    if args.no_bounds:
        argv.append("--no-bounds")
    return cli_main(argv)


if __name__ == "__main__":
    sys.exit(main())
