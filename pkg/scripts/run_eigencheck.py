#!/usr/bin/env python3
"""Cross-validate the spectral machinery against the slow PV quadrature
oracle: eigenvalue relation for the weighted Gegenbauer modes plus the
triangular structure of the monomial operator matrix.

Exits nonzero if any deviation exceeds threshold.
"""

import argparse
import pathlib
import sys

from fraclap.cli import main as cli_main


def run(outdir: pathlib.Path, nmax: int):
    outdir.mkdir(parents=True, exist_ok=True)
    args = ["eigencheck", "--n", str(nmax), "--out", str(outdir / "full")]
    for s in (0.1, 0.25, 0.5, 0.75, 0.9):
        args += ["--s", str(s)]
    return cli_main(args)


if __name__ == "__main__":
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--nmax", type=int, default=4)
    parser.add_argument("--outdir", default="out/eigencheck", type=pathlib.Path)
    args = parser.parse_args()
    sys.exit(run(args.outdir, args.nmax))
