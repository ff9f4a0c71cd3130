#!/usr/bin/env python3
"""Convergence sweeps on (-1, 1) for the smooth and the |x| right-hand
sides, across several fractional orders.

Writes one CSV per (rhs, s) pair under --outdir and prints the fitted
orders; the runge case should come out super-algebraic, the absx case
with L2 order ~2 and H^{2s} order ~1.5.
"""

import argparse
import pathlib

from fraclap.cli import main as cli_main


def run(outdir: pathlib.Path):
    outdir.mkdir(parents=True, exist_ok=True)
    for rhs in ("runge", "absx"):
        for s in (0.25, 0.5, 0.75):
            prefix = outdir / f"{rhs}_s{s:g}"
            print(f"=== rhs={rhs} s={s} ===")
            code = cli_main(
                [
                    "convergence",
                    "--s", str(s),
                    "--interval", "-1", "1",
                    "--rhs", rhs,
                    "--n", "16,32,64,128,256",
                    "--ref-n", "512",
                    "--out", str(prefix),
                ]
            )
            if code != 0:
                raise SystemExit(code)


if __name__ == "__main__":
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--outdir", default="out/convergence", type=pathlib.Path)
    run(parser.parse_args().outdir)
