"""eta(t_n) at t_n = 1/2 - 2^-n against log n / (n log 2) and W(n) / (n log 2).

The naive ratio dips before it climbs toward 1; the Lambert-scaled one is
close to 1 already at moderate n.
"""
import argparse

from holedim import modulus_probe


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--ns", type=int, nargs="*",
                    default=[5, 10, 20, 30, 50, 70, 100, 200, 500, 1000, 2000])
    args = ap.parse_args()
    print(f"{'n':>6} {'eta(t_n)':>12} {'c_n':>9} {'naive':>9} {'refined':>9}")
    for n in args.ns:
        p = modulus_probe(2, n)
        print(f"{n:>6} {p.eta:12.6e} {p.c_n:9.5f} {p.ratio_naive:9.5f} {p.ratio_refined:9.5f}")


if __name__ == "__main__":
    main()
