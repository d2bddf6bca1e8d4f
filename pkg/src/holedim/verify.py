"""Named verification suites run by ``holedim verify``."""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from . import dimension as dim
from . import oracle
from .orbits import enumerate_plateaus, in_U, orbit, plateau_of
from .words import enumerate_lyndon, expand, is_lyndon, periodic_value, value


@dataclass(frozen=True)
class Check:
    name: str
    ok: bool
    detail: str = ""


def agree(a: dim.DimensionResult, b: dim.DimensionResult, slack) -> bool:
    """Enclosures overlap once each is widened by ``slack``."""
    slack = Fraction(slack)
    return a.eta_lo - slack <= b.eta_hi and b.eta_lo - slack <= a.eta_hi


def sample_U(d: int, count: int, max_denominator: int, seed: int = 0) -> list:
    rng = random.Random(seed)
    out = set()
    while len(out) < count:
        q = rng.randint(2, max_denominator)
        t = Fraction(rng.randint(1, q - 1), q)
        if t < Fraction(d - 1, d) and in_U(t, d):
            out.add(t)
    return sorted(out)


def moran(d: int = 2, count: int = 50, max_denominator: int = 1000, depth: int = 200,
          seed: int = 0, tol=1e-12) -> list:
    checks = []
    for t in sample_U(d, count, max_denominator, seed):
        res = dim.eta(t, d, tol)
        m = dim.moran_residual(expand(t, d), res.lam, depth)
        checks.append(Check(f"moran t={t}", m.ok,
                            f"residual={m.residual:.3e} bound={m.bound:.3e}"))
    return checks


def plateau_constancy(d: int = 2, max_len: int = 8, slack=1e-10, tol=1e-14) -> list:
    checks = []
    for S in enumerate_lyndon(d, max_len):
        left = dim.zeta(value(S), d, tol)
        right = dim.zeta(periodic_value(S), d, tol)
        ok = (left.series.kind == "polynomial"
              and right.series.kind == "rational_function"
              and agree(left, right, slack))
        checks.append(Check(f"plateau {S}", ok,
                            f"left={left.value:.12f} right={right.value:.12f}"))
    return checks


def oracle_agreement(d: int = 2, tol_eta: float = 0.02, tol_gamma: float = 0.02,
                     escape_depth: int = 28, grid_q: int = 64, grid_n: int = 14) -> list:
    checks = []
    for t in (Fraction(1, 4), Fraction(1, 7), Fraction(1, 5)):
        target = dim.eta(t, d)
        est = oracle.dim_estimate(t, d, 10, 28)
        checks.append(Check(f"dim_estimate t={t}", abs(est.value - target.value) <= tol_eta,
                            f"estimate={est.value:.5f} eta={target.value:.5f}"))
        g = oracle.escape_estimate(t, d, escape_depth)
        g_target = dim.escape_rate(target.value, d)
        checks.append(Check(f"escape_estimate t={t} n={escape_depth}",
                            abs(g - g_target) <= tol_gamma,
                            f"estimate={g:.5f} gamma={g_target:.5f}"))
    mismatches = 0
    total = 0
    for q in range(2, grid_q + 1):
        for p in range(1, q):
            if Fraction(p, q).denominator != q:
                continue
            for n in range(1, grid_n + 1):
                total += 1
                t = Fraction(p, q)
                if oracle.survivor_count(t, d, n).count != oracle.survivor_count_exhaustive(t, d, n):
                    mismatches += 1
    checks.append(Check(f"pruned == exhaustive (q<={grid_q}, n<={grid_n})", mismatches == 0,
                        f"{total} cases, {mismatches} mismatches"))
    return checks


def holder(t=Fraction(1, 4), d: int = 2, n_values=range(1, 41), tail: int = 5,
           tol_slope: float = 0.05) -> list:
    t = Fraction(t)
    target = dim.eta(t, d, 1e-20)
    points = dim.holder_probe(t, d, list(n_values))
    checks = []
    for p in points:
        checks.append(Check(f"holder n={p.n}", p.status == "ok",
                            f"dt={float(p.dt):.3e} slope={p.slope}"))
    for p in points[-tail:]:
        ok = p.slope is not None and abs(p.slope - target.value) <= tol_slope
        checks.append(Check(f"holder slope n={p.n} near eta", ok,
                            f"slope={p.slope} eta={target.value:.6f}"))
    return checks


def modulus(d: int = 2, ns=(10, 20, 50, 100), refined_tol: float = 0.10) -> list:
    points = [dim.modulus_probe(d, n) for n in ns]
    naive = [p.ratio_naive for p in points]
    checks = [Check("ratio_naive increasing over n=" + ",".join(map(str, ns)),
                    all(a < b for a, b in zip(naive, naive[1:])),
                    " ".join(f"{x:.5f}" for x in naive))]
    last = points[-1]
    checks.append(Check(f"ratio_refined within {refined_tol:.0%} of 1 at n={last.n}",
                        abs(last.ratio_refined - 1) <= refined_tol,
                        f"ratio_refined={last.ratio_refined:.5f}"))
    return checks


def complement_cover(d: int = 2, max_m: int = 12) -> list:
    plateaus = enumerate_plateaus(d, max_m)
    checks = []
    disjoint = all(a.right <= b.left for a, b in zip(plateaus, plateaus[1:]))
    checks.append(Check(f"plateaus of length <= {max_m} pairwise disjoint", disjoint,
                        f"{len(plateaus)} plateaus"))
    by_label = {str(p.label): p for p in plateaus}
    bad_verdict = bad_cover = 0
    for m in range(1, max_m + 1):
        for a in range(1, d**m):
            t = Fraction(a, d**m)
            if t.denominator != d**m:
                continue
            brute = not any(0 < y < t for y in orbit(t, d))
            if brute != in_U(t, d):
                bad_verdict += 1
            if not brute:
                rec = plateau_of(t, d)
                if not (rec and t in rec and is_lyndon(rec.label)
                        and by_label.get(str(rec.label)) == rec):
                    bad_cover += 1
    checks.append(Check("exact verdicts on d-rationals", bad_verdict == 0,
                        f"{bad_verdict} disagreements"))
    checks.append(Check("stable d-rationals covered by listed Lyndon plateaus",
                        bad_cover == 0, f"{bad_cover} failures"))
    for label, left, right in (("01", Fraction(1, 4), Fraction(1, 3)),
                               ("1", Fraction(1, 2), Fraction(1))):
        rec = by_label.get(label)
        checks.append(Check(f"plateau ({left}, {right}) present",
                            d == 2 and rec is not None and (rec.left, rec.right) == (left, right)))
    return checks


SUITES = {
    "moran": moran,
    "plateau-constancy": plateau_constancy,
    "oracle-agreement": oracle_agreement,
    "holder": holder,
    "modulus": modulus,
    "complement-cover": complement_cover,
}
