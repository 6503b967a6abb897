#!/usr/bin/env python3
"""Headline census sweep: measured irreducible-substitution counts against
the 1/n^r density model, over a grid of fields and outer families.

Includes the twin preset (X, X+1, ...) and the quadratic-value preset
(X^2 + 1 over q = 3 mod 4, where it is irreducible).

Usage: python3 scripts/run_theorem_checks.py [--threads N]
"""
import argparse
import sys
import time
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from hypohff.census import CensusSpec, run_census
from hypohff.ffield import make_field
from hypohff.polyparse import parse_poly


CASES = [
    # (p, k, n, outer literals, label)
    (101, 1, 2, ["X"], "single linear"),
    (101, 1, 3, ["X", "X + 1"], "twin"),
    (101, 1, 2, ["X", "X + 1", "X + 2"], "triple"),
    (103, 1, 2, ["X^2 + 1"], "quadratic values (q = 3 mod 4)"),
    (2, 6, 3, ["X"], "char 2, odd substitution degree"),
    (2, 6, 3, ["X", "X + 1"], "char 2 twin"),
    (3, 2, 3, ["X"], "q = 9"),
]


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--threads", type=int, default=1)
    args = ap.parse_args()

    print(f"{'field':>7} {'n':>2} {'outer':<24} {'hits':>10} {'expected':>12} "
          f"{'norm.dev':>9} {'time':>7}")
    for p, k, n, lits, label in CASES:
        ctx = make_field(p, k)
        fs = tuple(parse_poly(s, ctx) for s in lits)
        spec = CensusSpec(ctx=ctx, n=n, fs=fs)
        t0 = time.monotonic()
        rep = run_census(spec, threads=args.threads)
        dt = time.monotonic() - t0
        expected = float(rep.predicted_density * ctx.q ** n)
        print(f"F_{ctx.q:<5} {n:>2} {','.join(lits):<24} {rep.hits:>10} "
              f"{expected:>12.1f} {rep.normalized_deviation:>9.4f} {dt:>6.1f}s"
              f"   # {label}")


if __name__ == "__main__":
    main()
