#!/usr/bin/env python3
"""Monte Carlo accuracy map: the blocker sweeps every cell of the polar
grid on fresh random deployments; outputs per-cell MAE and weighted MAE.

Usage: python scripts/run_grid.py [outdir] [trials]
"""

import sys

from sidelobe_sensing.cli import main

if __name__ == "__main__":
    out = sys.argv[1] if len(sys.argv) > 1 else "out/grid"
    trials = sys.argv[2] if len(sys.argv) > 2 else "50"
    sys.exit(main(["grid", "--out", out, "--trials", trials]))
