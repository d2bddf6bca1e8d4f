"""Acceptance gate: one test per criterion, each printing a PASS/FAIL line.

The lines are also collected in LINES and echoed in the terminal summary.
"""

import math
from fractions import Fraction

from holedim import dimension as dim
from holedim import oracle
from holedim.orbits import enumerate_plateaus, in_U, plateau_of
from holedim.words import (
    all_words,
    enumerate_lyndon,
    expand,
    is_lyndon,
    periodic_value,
    value,
)

F = Fraction
LINES = []
ETA_QUARTER = math.log2((1 + math.sqrt(5)) / 2)


def report(n, ok, detail):
    line = f"criterion {n}: {'PASS' if ok else 'FAIL'} - {detail}"
    LINES.append(line)
    print(line)
    assert ok, line


def test_criterion_01_cubic():
    rep = dim.series_of(expand(F(1, 7)))
    lam = dim.solve_lambda(rep, 1e-12)
    m = lam.mid
    residual = abs(m**3 + m**2 + m - 1)
    closed = rep == dim.SeriesRep("rational_function", (), (1, 1, 0), 2)
    ok = residual <= F(1, 10**12) and closed and str(rep) == "(X + X^2) / (1 - X^3)"
    report(1, ok, f"|m^3+m^2+m-1| = {float(residual):.2e} at m = {float(m):.12f}, series {rep}")


def test_criterion_02_plateau_constancy():
    worst = 0.0
    bad = []
    labels = enumerate_lyndon(2, 8)
    for S in labels:
        a = dim.eta(value(S), 2, 1e-14)
        b = dim.eta(periodic_value(S), 2, 1e-14)
        if str(S) == "1":
            # (1/2, 1): both ends sit at or beyond the critical parameter, eta = 0 exactly
            if not (a.exact and b.exact and a.eta_hi == b.eta_hi == 0):
                bad.append(str(S))
            continue
        kinds = (a.series.kind, b.series.kind) == ("polynomial", "rational_function")
        gap = max(a.eta_lo - b.eta_hi, b.eta_lo - a.eta_hi, 0)
        worst = max(worst, abs(a.value - b.value))
        if not kinds or gap > F(1, 10**10):
            bad.append(str(S))
    report(2, not bad, f"{len(labels)} labels, max |eta(left) - eta(right)| = {worst:.2e}, "
                       f"failures {bad}")


def _brute_U(t, steps):
    x = t
    for _ in range(steps):
        if 0 < x < t:
            return False
        x = (2 * x) % 1
    return True


def test_criterion_03_complement_decomposition():
    plateaus = enumerate_plateaus(2, 12)
    disjoint = all(a.right <= b.left for a, b in zip(plateaus, plateaus[1:]))
    wrong_verdict = wrong_cover = checked = 0
    for m in range(1, 13):
        for a in range(1, 2**m, 2):
            t = F(a, 2**m)
            checked += 1
            member = in_U(t)
            if member != _brute_U(t, m + 2):
                wrong_verdict += 1
            if not member:
                rec = plateau_of(t)
                if rec is None or t not in rec or not is_lyndon(rec.label) or rec.length > m:
                    wrong_cover += 1
    pairs = {(p.left, p.right) for p in plateaus}
    named = {(F(1, 4), F(1, 3)), (F(1, 2), F(1))} <= pairs
    ok = disjoint and named and not wrong_verdict and not wrong_cover
    report(3, ok, f"{checked} dyadics, {wrong_verdict} bad verdicts, {wrong_cover} bad covers, "
                  f"{len(plateaus)} plateaus disjoint={disjoint}, named intervals present={named}")


def test_criterion_04_lyndon_equivalence():
    exceptions = []
    total = 0
    for n in range(1, 11):
        for S in all_words(2, n):
            if S.digits[-1] == 0:
                continue
            total += 1
            both = in_U(value(S)) and in_U(periodic_value(S))
            if both != is_lyndon(S):
                exceptions.append(str(S))
    report(4, not exceptions, f"{total} words, exceptions {exceptions[:5]}")


def test_criterion_05_oracle_agreement():
    parts = []
    ok = True
    for t in (F(1, 4), F(1, 7), F(1, 5)):
        target = dim.eta(t).value
        est = oracle.dim_estimate(t, 2, 10, 28)
        g = oracle.escape_estimate(t, 2, 28)
        g_target = dim.escape_rate(target)
        ok &= abs(est.value - target) <= 0.02 and abs(g - g_target) <= 0.02
        parts.append(f"t={t}: dim err {est.value - target:+.4f}, escape err {g - g_target:+.4f}")
    mismatches = total = 0
    for q in range(2, 65):
        for p in range(1, q):
            if math.gcd(p, q) != 1:
                continue
            t = F(p, q)
            for n in range(1, 15):
                total += 1
                if oracle.survivor_count(t, 2, n).count != oracle.survivor_count_exhaustive(t, 2, n):
                    mismatches += 1
    ok &= mismatches == 0
    parts.append(f"pruned vs exhaustive: {mismatches}/{total} mismatches")
    report(5, ok, "; ".join(parts))


def test_criterion_06_envelope():
    grid = [F(k, 256) for k in range(257)]
    running = None
    bad_env, bad_dom = [], []
    for t in grid:
        e = dim.eta(t)
        z = dim.zeta(t)
        if running is None or z.eta_lo < running.eta_lo:
            running = z
        slack = running.width + e.width
        if running.eta_lo - slack > e.eta_hi or e.eta_lo - slack > running.eta_hi:
            bad_env.append(str(t))
        if z.eta_hi < e.eta_lo - e.width:
            bad_dom.append(str(t))
    report(6, not bad_env and not bad_dom,
           f"{len(grid)} points, envelope failures {bad_env[:5]}, zeta < eta at {bad_dom[:5]}")


def test_criterion_07_holder():
    t = F(1, 4)
    target = dim.eta(t).value
    points = dim.holder_probe(t, 2, range(1, 41))
    certified = all(p.status == "ok" for p in points)
    tail = points[-5:]
    slopes_ok = certified and all(abs(p.slope - ETA_QUARTER) <= 0.05 for p in tail)
    # upper bound |d eta| <= C |dt|^eta with one C for every probe
    ratios = [float(p.deta_hi) / float(p.dt) ** target for p in points]
    C = max(ratios)
    bound_ok = all(float(p.deta_hi) <= C * float(p.dt) ** target * (1 + 1e-12) for p in points)
    # and the exponent is sharp: with eta + 0.05 the required constant keeps growing
    sharp = [float(p.deta_lo) / float(p.dt) ** (target + 0.05) for p in points[-10:]]
    sharp_ok = all(b > a for a, b in zip(sharp, sharp[1:]))
    ok = slopes_ok and bound_ok and sharp_ok
    report(7, ok, "last slopes " + ", ".join(f"{p.slope:.4f}" for p in tail)
           + f" vs {ETA_QUARTER:.4f}; C = {C:.4f}; exponent sharp={sharp_ok}")


def test_criterion_08_modulus():
    ns = (10, 20, 50, 100)
    points = [dim.modulus_probe(2, n) for n in ns]
    naive = [p.ratio_naive for p in points]
    increasing = all(a < b for a, b in zip(naive, naive[1:]))
    refined = points[-1].ratio_refined
    ok = increasing and abs(refined - 1) <= 0.10
    report(8, ok, "ratio_naive " + ", ".join(f"n={n}: {r:.5f}" for n, r in zip(ns, naive))
           + f" (increasing={increasing}); ratio_refined(100) = {refined:.5f}")


def test_criterion_09_bifurcation_dimension():
    est = oracle.bif_dim_estimate(F(1, 4), 2, 24)
    err = est.value - ETA_QUARTER
    report(9, abs(err) <= 0.05, f"bif_dim_estimate(1/4, n=24) = {est.value:.4f}, "
                                f"eta(1/4) = {ETA_QUARTER:.4f}, error {err:+.4f}")


def test_criterion_10_monotone_and_exact_values():
    grid = [F(k, 1024) for k in range(1025)]
    vals = [dim.eta(t) for t in grid]
    monotone = all(b.eta_lo <= a.eta_hi for a, b in zip(vals, vals[1:]))
    at_zero = vals[0].exact and vals[0].eta_lo == vals[0].eta_hi == 1
    zeros = all(r.eta_lo == r.eta_hi == 0 and r.exact for t, r in zip(grid, vals) if t >= F(1, 2))
    report(10, monotone and at_zero and zeros,
           f"non-increasing={monotone}, eta(0)=1 exact={at_zero}, eta=0 exact on [1/2,1]={zeros}")
