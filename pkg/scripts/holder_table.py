"""Hölder slopes along the one-sided approximants for a few parameters in U."""
import argparse
from fractions import Fraction

from holedim import eta, holder_probe


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--t", nargs="*", default=["1/4", "1/7", "1/5", "3/8"])
    ap.add_argument("--n-max", type=int, default=60)
    args = ap.parse_args()
    ns = sorted({1, 2, 5, 10, 20, 30, 40, args.n_max} & set(range(1, args.n_max + 1)))
    for text in args.t:
        t = Fraction(text)
        target = eta(t).value
        print(f"t = {t}  eta = {target:.6f}")
        print(f"{'n':>4} {'|t-t_n|':>12} {'slope':>10} {'slope-eta':>10} {'ratio':>8}")
        for p in holder_probe(t, 2, ns):
            if p.status != "ok":
                print(f"{p.n:>4} {float(p.dt):12.3e} {p.status}")
                continue
            ratio = float(p.deta_lo) / float(p.dt) ** target
            print(f"{p.n:>4} {float(p.dt):12.3e} {p.slope:10.5f} {p.slope - target:+10.5f} {ratio:8.4f}")
        print()


if __name__ == "__main__":
    main()
