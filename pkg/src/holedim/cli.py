"""Command-line front end: ``holedim <command> [options]``.

Exit codes: 0 ok, 1 check failure, 2 usage, 3 precision cap, 4 budget.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from . import dimension as dim
from . import oracle, verify
from .orbits import enumerate_plateaus, in_bifurcation_set, plateau_of
from .words import Expansion, enumerate_lyndon, expand, value

EXIT_OK, EXIT_CHECK, EXIT_USAGE, EXIT_PRECISION, EXIT_BUDGET = 0, 1, 2, 3, 4


class UsageError(ValueError):
    pass


@dataclass
class RunConfig:
    base: int = 2
    tol: float = dim.DEFAULT_TOL
    precision: int = dim.DEFAULT_PRECISION
    max_precision: int = dim.MAX_PRECISION
    format: Optional[str] = None
    out: Optional[str] = None
    threads: int = 1
    grid: int = 1024
    budget: int = oracle.DEFAULT_BUDGET

    def validate(self):
        if self.base < 2:
            raise UsageError("--base must be >= 2")
        if not self.tol > 0:
            raise UsageError("--tol must be positive")
        if self.precision < 8 or self.max_precision < self.precision:
            raise UsageError("need 8 <= --precision <= --max-precision")
        if self.threads < 1:
            raise UsageError("--threads must be >= 1")
        if self.grid < 1:
            raise UsageError("--grid must be >= 1")
        return self


def parse_param(text: str, d: int) -> Fraction:
    """Exact parameter from "p/q", a decimal string, or an expansion literal "pre(per)"."""
    text = text.strip()
    try:
        if "(" in text:
            return value(Expansion.parse(text, d))
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"cannot parse parameter {text!r}: {exc}") from None


def parse_range(text: str) -> list:
    try:
        if ":" in text:
            a, b = text.split(":")
            lo, hi = int(a), int(b)
            if lo > hi:
                raise ValueError
            return list(range(lo, hi + 1))
        return [int(x) for x in text.split(",")]
    except ValueError:
        raise UsageError(f"bad range {text!r}; use a:b or a,b,c") from None


def _emit(text: str, cfg: RunConfig):
    if cfg.out:
        with open(cfg.out, "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _csv(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def _records(header, rows, cfg: RunConfig, default="json") -> str:
    if (cfg.format or default) == "csv":
        return _csv(header, rows)
    return json.dumps([dict(zip(header, r)) for r in rows], indent=2) + "\n"


def _result_dict(res: dim.DimensionResult) -> dict:
    out = res.to_dict()
    if res.series is not None:
        out["series"] = str(res.series)
    if res.plateau is not None:
        out["plateau"] = res.plateau.to_dict()
    return out


def cmd_eta(args, cfg, fn=dim.eta):
    t = parse_param(args.t, cfg.base)
    res = fn(t, cfg.base, cfg.tol, cfg.precision, cfg.max_precision)
    out = _result_dict(res)
    if cfg.format == "csv":
        keys = ["t", "lambda_lo", "lambda_hi", "eta_lo", "eta_hi", "exact"]
        _emit(_csv(keys, [[out[k] for k in keys]]), cfg)
    else:
        _emit(json.dumps(out, indent=2) + "\n", cfg)
    return EXIT_OK


def cmd_zeta(args, cfg):
    return cmd_eta(args, cfg, dim.zeta)


def staircase_row(job):
    t, d, tol, precision, max_precision = job
    e = dim.eta(t, d, tol, precision, max_precision)
    z = dim.zeta(t, d, tol, precision, max_precision)
    member = in_bifurcation_set(t, d).in_set
    label = ""
    if 0 < t < 1 and not member:
        label = str(plateau_of(t, d).label)
    return [str(t), repr(dim.round_down(e.eta_lo)), repr(dim.round_up(e.eta_hi)),
            repr(dim.round_down(z.eta_lo)), repr(dim.round_up(z.eta_hi)),
            int(member), label]


STAIRCASE_HEADER = ["t", "eta_lo", "eta_hi", "zeta_lo", "zeta_hi", "in_U", "plateau_label"]


def staircase_rows(cfg: RunConfig) -> list:
    jobs = [(Fraction(k, cfg.grid), cfg.base, cfg.tol, cfg.precision, cfg.max_precision)
            for k in range(cfg.grid + 1)]
    if cfg.threads > 1:
        with ProcessPoolExecutor(cfg.threads) as pool:
            return list(pool.map(staircase_row, jobs, chunksize=32))
    return [staircase_row(j) for j in jobs]


def cmd_staircase(args, cfg):
    _emit(_records(STAIRCASE_HEADER, staircase_rows(cfg), cfg, default="csv"), cfg)
    return EXIT_OK


def cmd_plateaus(args, cfg):
    recs = enumerate_plateaus(cfg.base, args.max_len)
    rows = [[str(r.label), str(r.left), str(r.right), r.length] for r in recs]
    _emit(_records(["label", "left", "right", "length"], rows, cfg), cfg)
    return EXIT_OK


def cmd_bifurcation(args, cfg):
    t = parse_param(args.t, cfg.base)
    v = in_bifurcation_set(t, cfg.base)
    out = {"t": str(t), "in_U": v.in_set, "witness_k": v.witness_k, "orbit_len": v.orbit_len}
    if 0 < t <= 1:
        out["expansion"] = str(expand(t, cfg.base))
    if 0 < t < 1 and not v.in_set:
        out["plateau"] = plateau_of(t, cfg.base).to_dict()
    _emit(json.dumps(out, indent=2) + "\n", cfg)
    return EXIT_OK


def cmd_lyndon(args, cfg):
    rows = [[str(w), str(value(w)), len(w)] for w in enumerate_lyndon(cfg.base, args.max_len)]
    _emit(_records(["word", "value", "length"], rows, cfg), cfg)
    return EXIT_OK


def cmd_expand(args, cfg):
    t = parse_param(args.t, cfg.base)
    e = expand(t, cfg.base)
    out = {"t": str(t), "expansion": str(e), "series": str(dim.series_of(e))}
    _emit(json.dumps(out, indent=2) + "\n", cfg)
    return EXIT_OK


def cmd_holder(args, cfg):
    t = parse_param(args.t, cfg.base)
    points = dim.holder_probe(t, cfg.base, parse_range(args.n_range), cfg.tol,
                              cfg.precision, cfg.max_precision)
    header = ["n", "t_n", "dt", "deta_lo", "deta_hi", "slope_lo", "slope_hi", "status"]
    rows = [[p.n, str(p.tn), repr(float(p.dt)), repr(dim.round_down(p.deta_lo)),
             repr(dim.round_up(p.deta_hi)), p.slope_lo, p.slope_hi, p.status]
            for p in points]
    _emit(_records(header, rows, cfg, default="csv"), cfg)
    return EXIT_OK


def cmd_modulus(args, cfg):
    header = ["n", "t_n", "eta_lo", "eta_hi", "c_n", "ratio_naive", "ratio_refined"]
    rows = []
    for n in parse_range(args.n_range):
        p = dim.modulus_probe(cfg.base, n, cfg.tol, cfg.precision, cfg.max_precision)
        rows.append([n, str(p.tn), repr(dim.round_down(p.eta_lo)),
                     repr(dim.round_up(p.eta_hi)), p.c_n, p.ratio_naive, p.ratio_refined])
    _emit(_records(header, rows, cfg, default="csv"), cfg)
    return EXIT_OK


def cmd_oracle(args, cfg):
    t = parse_param(args.t, cfg.base)
    ns = parse_range(args.n_range)
    if args.kind == "survivor":
        stats = [oracle.survivor_count(t, cfg.base, n, cfg.budget) for n in ns]
        text = (oracle.stats_json(stats) + "\n" if cfg.format == "json"
                else oracle.stats_csv(stats))
    elif args.kind == "dim":
        est = oracle.dim_estimate(t, cfg.base, ns[0], ns[-1], cfg.budget)
        gamma = oracle.escape_estimate(t, cfg.base, ns[-1], cfg.budget)
        text = json.dumps({"t": str(t), "eta_estimate": est.value, "residual": est.residual,
                           "n_min": est.n_min, "n_max": est.n_max,
                           "gamma_estimate": gamma}, indent=2) + "\n"
    elif args.kind == "bif":
        rows = []
        for n in ns:
            est = oracle.bif_dim_estimate(t, cfg.base, n, cfg.budget)
            rows.append([str(t), cfg.base, n, est.value])
        text = _records(["t", "d", "n", "bif_eta_estimate"], rows, cfg, default="csv")
    else:
        rep = oracle.k_membership_crosscheck(t, cfg.base)
        text = json.dumps({"t": str(t), "forward_checked": rep.forward_checked,
                           "forward_failures": rep.forward_failures,
                           "backward_checked": rep.backward_checked,
                           "backward_failures": rep.backward_failures}, indent=2) + "\n"
    _emit(text, cfg)
    return EXIT_OK


def cmd_verify(args, cfg):
    kwargs = {}
    if args.suite == "holder" and args.t:
        kwargs["t"] = parse_param(args.t, cfg.base)
    if args.suite in ("holder",) and args.n_range:
        kwargs["n_values"] = parse_range(args.n_range)
    checks = verify.SUITES[args.suite](d=cfg.base, **kwargs)
    lines = [f"1..{len(checks)}"]
    for i, c in enumerate(checks, start=1):
        status = "ok" if c.ok else "not ok"
        lines.append(f"{status} {i} - {c.name}" + (f" # {c.detail}" if c.detail else ""))
    _emit("\n".join(lines) + "\n", cfg)
    return EXIT_OK if all(c.ok for c in checks) else EXIT_CHECK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--base", type=int, default=2)
    common.add_argument("--tol", type=float, default=dim.DEFAULT_TOL)
    common.add_argument("--precision", type=int, default=dim.DEFAULT_PRECISION,
                        help="starting precision in bits (doubled as needed)")
    common.add_argument("--max-precision", type=int, default=dim.MAX_PRECISION)
    common.add_argument("--format", choices=["csv", "json"])
    common.add_argument("--out")
    common.add_argument("--threads", type=int, default=1)
    common.add_argument("--budget", type=int, default=oracle.DEFAULT_BUDGET)

    parser = argparse.ArgumentParser(prog="holedim", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, fn, help_):
        p = sub.add_parser(name, parents=[common], help=help_)
        p.set_defaults(fn=fn)
        return p

    add("eta", cmd_eta, "dimension of K(t)").add_argument("t")
    add("zeta", cmd_zeta, "root formula applied blindly at t").add_argument("t")
    add("staircase", cmd_staircase, "eta and zeta over the grid k/N").add_argument(
        "--grid", type=int, default=1024)
    add("plateaus", cmd_plateaus, "Lyndon plateaus").add_argument(
        "--max-len", type=int, default=4)
    add("bifurcation", cmd_bifurcation, "membership of t in U").add_argument("t")
    add("lyndon", cmd_lyndon, "Lyndon plateau labels").add_argument(
        "--max-len", type=int, default=4)
    add("expand", cmd_expand, "non-degenerate expansion and series of t").add_argument("t")
    p = add("holder", cmd_holder, "local Hölder exponent probe")
    p.add_argument("--t", default="1/4")
    p.add_argument("--n-range", default="1:30")
    add("modulus", cmd_modulus, "modulus of continuity at (d-1)/d").add_argument(
        "--n-range", default="10,20,50,100")
    p = add("oracle", cmd_oracle, "cylinder-counting estimates")
    p.add_argument("t")
    p.add_argument("--n-range", default="10:28")
    p.add_argument("--kind", choices=["survivor", "dim", "bif", "crosscheck"],
                   default="survivor")
    p = add("verify", cmd_verify, "run a verification suite")
    p.add_argument("suite", choices=sorted(verify.SUITES))
    p.add_argument("--t")
    p.add_argument("--n-range")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    cfg = RunConfig(base=args.base, tol=args.tol, precision=args.precision,
                    max_precision=args.max_precision, format=args.format, out=args.out,
                    threads=args.threads, grid=getattr(args, "grid", 1024),
                    budget=args.budget)
    try:
        cfg.validate()
        return args.fn(args, cfg)
    except UsageError as exc:
        print(f"holedim: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except dim.PrecisionError as exc:
        print(f"holedim: precision cap: {exc}", file=sys.stderr)
        return EXIT_PRECISION
    except oracle.BudgetExceeded as exc:
        print(f"holedim: budget exceeded at depth {exc.depth_reached}: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except ValueError as exc:
        print(f"holedim: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
