#!/usr/bin/env python3
"""Certify the large-argument Bessel remainder for the orders in use.

Emits one CSV per order under results/bessel/ plus the empirical constants
sup rho^(3/2) |J_lam - main term| over [2, 2^12].
"""

import sys
from pathlib import Path

from oscillax.cli import main

OUT = Path("results/bessel")


def run():
    rc = 0
    for lam in ("0", "0.5", "1", "1.5"):
        rc |= main(["bessel-check", "--out-dir", str(OUT / f"lam{lam}"),
                    "--lambda", lam, "--rho-min", "2", "--rho-max", "4096"])
    return rc


if __name__ == "__main__":
    sys.exit(run())
