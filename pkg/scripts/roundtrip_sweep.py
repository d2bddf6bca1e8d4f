"""Exhaustive expand/value round trip for all p/q in (0, 1] with q <= Q.

The full Q = 5000 sweep is hours of work (the test suite samples it), so
this runs in chunks and can be split across processes.
"""
import argparse
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from math import gcd

from holedim.words import expand, value


def chunk(args):
    d, q_lo, q_hi = args
    bad = []
    for q in range(q_lo, q_hi):
        for p in range(1, q + 1):
            if gcd(p, q) == 1 and value(expand(Fraction(p, q), d)) != Fraction(p, q):
                bad.append((p, q))
    return d, q_lo, q_hi, bad


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--q-max", type=int, default=5000)
    ap.add_argument("--bases", type=int, nargs="*", default=[2, 3, 10])
    ap.add_argument("--workers", type=int, default=4)
    ap.add_argument("--step", type=int, default=100)
    args = ap.parse_args()
    jobs = [(d, q, min(q + args.step, args.q_max + 1))
            for d in args.bases for q in range(1, args.q_max + 1, args.step)]
    failures = 0
    with ProcessPoolExecutor(args.workers) as pool:
        for d, lo, hi, bad in pool.map(chunk, jobs):
            failures += len(bad)
            print(f"d={d} q in [{lo}, {hi}): {len(bad)} failures {bad[:3]}", flush=True)
    print("total failures:", failures)


if __name__ == "__main__":
    main()
