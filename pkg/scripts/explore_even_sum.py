#!/usr/bin/env python3
"""Sweep quadratic shift sets in characteristic 2 and compare the joint
all-irreducible count against the 2^-m independence model, next to the
even-subset-sum predicate.

For |set| = 2 the predicate characterizes independence exactly; for larger
even substitution degrees the question is open, and this sweep collects
the empirical evidence at q = 16 and q = 64.

Usage: python3 scripts/explore_even_sum.py [--k 6] [--max-size 4] [--limit 40]
"""
import argparse
import itertools
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from hypohff.census import correlation_mode
from hypohff.ffield import enumerate_field, make_field


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--k", type=int, default=4, help="field is F_{2^k}")
    ap.add_argument("--max-size", type=int, default=4)
    ap.add_argument("--limit", type=int, default=40,
                    help="sets per size (deterministic prefix)")
    args = ap.parse_args()

    ctx = make_field(2, args.k)
    elems = list(enumerate_field(ctx))
    print(f"field F_{ctx.q}; prediction is q^2 / 2^m")
    print(f"{'m':>2} {'even-sum ok':>12} {'all-irr':>8} {'predicted':>10} {'rel.dev':>8}")
    for m in range(2, args.max_size + 1):
        shown = 0
        for combo in itertools.combinations(elems, m):
            rep = correlation_mode(ctx, list(combo))
            print(f"{m:>2} {str(rep.even_sum_ok):>12} {rep.all_irreducible:>8} "
                  f"{float(rep.independence_prediction):>10.1f} "
                  f"{rep.relative_deviation:>8.3f}")
            shown += 1
            if shown >= args.limit:
                break


if __name__ == "__main__":
    main()
