"""Grid data for the eta / zeta staircase plots.

    python scripts/staircase_data.py --grid 1024 --out staircase.csv
"""
import argparse
import sys

from holedim.cli import STAIRCASE_HEADER, RunConfig, _csv, staircase_rows


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--grid", type=int, default=1024)
    ap.add_argument("--base", type=int, default=2)
    ap.add_argument("--threads", type=int, default=4)
    ap.add_argument("--out")
    args = ap.parse_args()
    cfg = RunConfig(base=args.base, grid=args.grid, threads=args.threads).validate()
    text = _csv(STAIRCASE_HEADER, staircase_rows(cfg))
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


if __name__ == "__main__":
    main()
