#!/usr/bin/env python3
"""Run the zero-freeness sweep and the oracle comparison at the reference
parameter pairs and write the reports next to this script."""

import sys

from spinzero.cli import main

if __name__ == "__main__":
    extra = sys.argv[1:]
    code = main(["verify", "--count", "25", "--n-max", "10", "--deg-max", "4",
                 "--params", "3:1.3333333333333333,4:0.5,2:2,2:1.01",
                 "--out", "verify_report.json"] + extra)
    if code != 0:
        sys.exit(code)
    for beta, gamma, out in (("3", "1.3333333333333333", "oracle_exterior.csv"),
                             ("4", "0.5", "oracle_disk.csv")):
        code = main(["oracle", "--beta", beta, "--gamma", gamma,
                     "--d-max", "8", "--out", out])
        if code != 0:
            sys.exit(code)
    sys.exit(0)
