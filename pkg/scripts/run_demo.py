#!/usr/bin/env python3
"""Single-trial detection walkthrough: one random deployment, a blocker
wandering past the reference uplink, and the full sensing-matrix ->
signature -> angular-trajectory chain dumped as CSV + SVG.

Usage: python scripts/run_demo.py [outdir] [seed]
"""

import sys

from sidelobe_sensing.cli import main

if __name__ == "__main__":
    out = sys.argv[1] if len(sys.argv) > 1 else "out/demo"
    seed = sys.argv[2] if len(sys.argv) > 2 else "27"
    sys.exit(main(["demo", "--out", out, "--seed", seed]))
