#!/usr/bin/env python3
"""Emit the CSV data behind the three headline curves.

  fig1_logistic_scan.csv   logistic branches r(var_eps) for k in {0.01, 1, 10, 100}
  fig2_ricker_curve.csv    noiseless Ricker root r(k) over k in [0.5, 100]
  fig3_ricker_scan.csv     Ricker branches r(var_eps) for k in {0.01, 1, 10, 100}

Each CSV is plottable directly, e.g. with pandas:

    df = pd.read_csv("out/fig1_logistic_scan.csv")
    for (k, branch), g in df[df.feasible].groupby(["k", "branch"]):
        plt.plot(g.var_eps, g.r, label=f"k={k} {branch}")
"""

import argparse
import sys
from pathlib import Path

from steadychaos.cli import main as cli_main

FIG_K = "0.01,1,10,100"


def emit(argv: list[str]) -> None:
    code = cli_main(argv)
    if code != 0:
        sys.exit(f"command failed with exit code {code}: {' '.join(argv)}")


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out-dir", default="out", help="directory for the CSV files")
    parser.add_argument("--steps", type=int, default=101, help="grid points per curve")
    args = parser.parse_args()
    out = Path(args.out_dir)
    out.mkdir(parents=True, exist_ok=True)

    emit([
        "scan", "--map", "logistic", "--k", FIG_K,
        "--var-eps-max", "0.5", "--steps", str(args.steps),
        "--output", str(out / "fig1_logistic_scan.csv"),
    ])
    emit([
        "ricker-curve", "--k-min", "0.5", "--k-max", "100",
        "--steps", str(args.steps), "--r-max", "20",
        "--output", str(out / "fig2_ricker_curve.csv"),
    ])
    emit([
        "scan", "--map", "ricker", "--k", FIG_K,
        "--var-eps-max", "0.5", "--steps", str(args.steps),
        "--r-max", "200",
        "--output", str(out / "fig3_ricker_scan.csv"),
    ])
    print(f"wrote 3 CSV files to {out}/")


if __name__ == "__main__":
    main()
