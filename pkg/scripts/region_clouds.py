#!/usr/bin/env python3
"""Dump boundary clouds of the per-degree product regions for the two
reference parameter pairs, as JSON files suitable for plotting."""

import sys

from spinzero.cli import main

PAIRS = [("3", "1.3333333333333333", "regions_exterior.json"),
         ("4", "0.5", "regions_disk.json")]

if __name__ == "__main__":
    for beta, gamma, out in PAIRS:
        code = main(["regions", "--beta", beta, "--gamma", gamma,
                     "--d-list", "2,3,4,5,6", "--samples", "360",
                     "--out", out] + sys.argv[1:])
        if code != 0:
            sys.exit(code)
    sys.exit(0)
