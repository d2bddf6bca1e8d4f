"""Finite-depth bias of the counting estimators.

Prints the single-depth dimension and escape-rate errors, the fitted slope,
and the box-count estimate of the bifurcation set above t, against depth.
"""
import argparse
import math
from fractions import Fraction

from holedim import bif_dim_estimate, dim_estimate, escape_rate, eta, survivor_count
from holedim.oracle import bif_words


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--t", nargs="*", default=["1/4", "1/7", "1/5"])
    ap.add_argument("--bif-depths", type=int, nargs="*", default=[12, 16, 20, 24, 28])
    args = ap.parse_args()
    for text in args.t:
        t = Fraction(text)
        target = eta(t).value
        gamma = escape_rate(target)
        fit = dim_estimate(t, 2, 10, 28)
        print(f"t = {t}  eta = {target:.5f}  gamma = {gamma:.5f}  fitted slope (10-28) = {fit.value:.5f}")
        for n in (16, 28, 40, 64, 100, 200):
            s = survivor_count(t, 2, n)
            print(f"  n={n:>4} count={s.count:<24d} eta_n={s.eta_estimate:.5f} "
                  f"gamma_n - gamma = {s.gamma_estimate - gamma:+.5f}")
        for n in args.bif_depths:
            b = bif_dim_estimate(t, 2, n)
            print(f"  bif n={n:>3} estimate={b.value:.5f} error={b.value - target:+.5f}")
        if len(args.bif_depths) >= 2:
            a, b = args.bif_depths[-2], args.bif_depths[-1]
            ca = sum(1 for _ in bif_words(t, 2, a))
            cb = sum(1 for _ in bif_words(t, 2, b))
            print(f"  bif local slope between n={a} and n={b}: {math.log2(cb / ca) / (b - a):.5f}")
        print()


if __name__ == "__main__":
    main()
