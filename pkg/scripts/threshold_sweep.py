#!/usr/bin/env python3
"""Reproduce the threshold-comparison sweep: for a fixed beta, tabulate the
prior algorithmic threshold, the conjectured threshold, and the zero-free
field threshold across gamma, as CSV."""

import sys

from spinzero.cli import main

if __name__ == "__main__":
    args = ["thresholds", "--beta", "2", "--gamma-min", "0.51",
            "--gamma-max", "2.0", "--step", "0.01", "--out", "thresholds.csv"]
    sys.exit(main(args + sys.argv[1:]))
