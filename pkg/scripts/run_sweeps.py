#!/usr/bin/env python3
"""Parameter sweeps: detection accuracy vs peak-side-lobe gain, and vs
receive beamwidth / blocker radius.

Usage: python scripts/run_sweeps.py [outdir] [trials]
"""

import sys

from sidelobe_sensing.cli import main

if __name__ == "__main__":
    out = sys.argv[1] if len(sys.argv) > 1 else "out/sweeps"
    trials = sys.argv[2] if len(sys.argv) > 2 else "50"
    code = main(["sweep-psl", "--out", out, "--trials", trials])
    code |= main(["sweep-bw-size", "--out", out, "--trials", trials])
    sys.exit(code)
