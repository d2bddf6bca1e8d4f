import math
from fractions import Fraction

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from holedim import dimension as dim
from holedim.dimension import (
    PrecisionError,
    SeriesRep,
    TruncationError,
    entropy,
    escape_rate,
    eta,
    holder_probe,
    markov_words,
    modulus_probe,
    modulus_series,
    moran_residual,
    series_from_digits,
    series_of,
    solve_lambda,
    zeta,
)
from holedim.orbits import enumerate_plateaus, in_U
from holedim.words import Expansion, Word, expand

F = Fraction
GOLDEN = (math.sqrt(5) - 1) / 2
ETA_QUARTER = math.log2((1 + math.sqrt(5)) / 2)


def cubic_root():
    # independent oracle: numpy companion-matrix roots of l^3 + l^2 + l - 1
    roots = np.roots([1, 1, 1, -1])
    return float(next(r.real for r in roots if abs(r.imag) < 1e-12 and 0 < r.real < 1))


def test_series_examples():
    rep = series_of(expand(F(1, 7)))
    assert rep.kind == "rational_function"
    assert rep.preperiod_coeffs == () and rep.period_coeffs == (1, 1, 0)
    assert str(rep) == "(X + X^2) / (1 - X^3)"
    for n in (2, 3, 7, 20):
        assert series_of(expand(F(1, 2) - F(1, 2**n))) == modulus_series(2, n)
    for d in (2, 3, 10):
        rep = series_of(expand(F(d - 1, d), d))
        assert rep.kind == "polynomial" and rep.preperiod_coeffs == (1,)


@settings(max_examples=100, deadline=None)
@given(st.fractions(0, 1, max_denominator=200).filter(lambda x: x > 0), st.sampled_from([2, 3]))
def test_series_coefficients_match_digits(t, d):
    e = expand(t, d)
    rep = series_of(e)
    for k in range(1, 60):
        assert rep.coefficient(k) == d - 1 - e.digit(k)


def test_eval_examples():
    rep = series_of(expand(F(1, 7)))
    assert dim.eval(rep, F(1, 2)) == (F(6, 7), F(6, 7))
    assert dim.eval(rep, F(0)) == (0, 0)
    golden = SeriesRep("polynomial", (1, 1))
    old = mpmath.iv.prec
    mpmath.iv.prec = 200
    try:
        x = (mpmath.iv.sqrt(5) - 1) / 2
    finally:
        mpmath.iv.prec = old
    lo, hi = dim.eval(golden, x, 200)
    assert lo <= 1 <= hi and hi - lo < F(1, 10**40)
    with pytest.raises(ValueError):
        dim.eval(rep, F(1))
    assert dim.eval(SeriesRep("polynomial", (1, 0, 1)), F(1)) == (2, 2)


@settings(max_examples=60, deadline=None)
@given(st.lists(st.integers(0, 1), min_size=1, max_size=6),
       st.lists(st.integers(0, 1), min_size=1, max_size=6))
def test_eval_strictly_increasing(pre, per):
    # P has non-negative coefficients with c_1 >= 1 here, so it is increasing on [0, 1)
    rep = SeriesRep("rational_function", (1,) + tuple(pre), tuple(per) if any(per) else (1,))
    xs = [F(k, 101) for k in range(101)]
    vals = [dim.eval(rep, x) for x in xs]
    assert all(a[1] < b[0] for a, b in zip(vals, vals[1:]))


def test_eval_truncated_contains_full_value():
    e = expand(F(1, 7))
    full = series_of(e)
    for depth in (10, 30):
        trunc = series_from_digits(e.digits(depth))
        for x in (F(1, 3), F(1, 2), F(3, 4)):
            v = dim.eval(full, x)[0]
            lo, hi = dim.eval(trunc, x)
            assert lo <= v <= hi


def test_solve_lambda_examples():
    r = cubic_root()
    enc = solve_lambda(series_of(expand(F(1, 7))), 1e-12)
    assert enc.width <= F(1, 10**12) and enc.lo <= F(r) + F(1, 10**14) and F(r) - F(1, 10**14) <= enc.hi
    assert abs(float(enc.mid) - 0.543689) < 1e-6
    enc = solve_lambda(SeriesRep("polynomial", (1, 1)), 1e-12)
    assert enc.lo <= F(GOLDEN) + F(1, 10**15) and F(GOLDEN) - F(1, 10**15) <= enc.hi
    enc = solve_lambda(SeriesRep("polynomial", (1,)))
    assert enc.lo == enc.hi == 1


def test_solve_lambda_certificate():
    rep = series_of(expand(F(3, 11)))
    enc = solve_lambda(rep, 1e-20)
    assert dim.eval(rep, enc.lo)[1] <= 1 <= dim.eval(rep, enc.hi)[0]


def test_solve_lambda_errors():
    with pytest.raises(ValueError):
        solve_lambda(SeriesRep("polynomial", ()))
    with pytest.raises(ValueError):
        solve_lambda(SeriesRep("polynomial", (1, 1)), 0)
    with pytest.raises(PrecisionError):
        solve_lambda(SeriesRep("polynomial", (1, 1)), F(1, 2**600), max_precision=512)


def test_truncated_series_enclosure():
    e = expand(F(1, 7))
    exact = solve_lambda(series_of(e), 1e-30)
    trunc = solve_lambda(series_from_digits(e.digits(120)), 1e-25)
    assert trunc.lo <= exact.lo and exact.hi <= trunc.hi + F(1, 10**29)
    with pytest.raises(TruncationError):
        solve_lambda(series_from_digits(e.digits(12)), 1e-12)


def test_eta_examples():
    r = eta(F(1, 7))
    assert abs(r.value - (-math.log2(cubic_root()))) < 1e-10
    assert abs(r.value - 0.8791) < 1e-4
    assert r.eta_lo <= r.eta_hi and r.width < F(1, 10**11)
    for d in (2, 3):
        z = eta(F(0), d)
        assert z.exact and z.eta_lo == z.eta_hi == 1
    r = eta(F(5, 8))
    assert r.exact and r.eta_lo == r.eta_hi == 0
    r = eta(F(13, 50))
    q = eta(F(1, 4))
    assert r.eta_lo == q.eta_lo and r.eta_hi == q.eta_hi
    assert abs(r.value - ETA_QUARTER) < 1e-11
    assert str(r.plateau.label) == "01"


def test_eta_at_and_beyond_critical_parameter_is_exact_zero():
    for d in (2, 3, 5):
        for t in (F(d - 1, d), F(d - 1, d) + F(1, 7 * d), F(1)):
            r = eta(t, d)
            assert r.exact and r.eta_hi == 0


def test_zeta_examples():
    a, b = zeta(F(1, 7)), eta(F(1, 7))
    assert (a.eta_lo, a.eta_hi) == (b.eta_lo, b.eta_hi)
    # 5/8 = .100(1) gives P = X^2 + X^3, applied blindly although 5/8 is not in U
    z = zeta(F(5, 8))
    assert str(z.series) == "X^2 + X^3"
    root = next(r.real for r in np.roots([1, 1, 0, -1]) if abs(r.imag) < 1e-12 and r.real > 0)
    assert abs(z.value - (-math.log2(root))) < 1e-10
    assert z.eta_lo >= eta(F(5, 8)).eta_hi == 0
    assert abs(zeta(F(1, 4)).value - ETA_QUARTER) < 1e-11
    assert zeta(F(1)).eta_hi == 0


def test_dimension_result_json():
    d = eta(F(1, 7)).to_dict()
    assert set(d) == {"t", "lambda_lo", "lambda_hi", "eta_lo", "eta_hi", "exact"}
    assert d["eta_lo"] <= d["eta_hi"] and abs(d["eta_lo"] - 0.8791464216) < 1e-10
    assert d["t"] == "1/7" and d["exact"] is False


def test_markov_words_examples():
    got = {str(w) for w in markov_words(expand(F(1, 7)), 5)}
    assert got == {"1", "01", "0011", "00101"}
    for d in (2, 3, 4):
        e = expand(F(d - 1, d), d)
        got = markov_words(e, 6)
        assert [w.digits for w in got] == [(d - 1,)]
    for t in (F(1, 7), F(1, 3), F(2, 9)):
        e = expand(t, 3)
        assert len(markov_words(e, 1)) == 2 - e.digit(1)


def test_markov_words_weights_satisfy_moran():
    # sum over Sigma(t) of lambda^|S| is P_t(lambda) = 1
    e = expand(F(1, 5))
    lam = solve_lambda(series_of(e), 1e-30)
    total = sum(float(lam.mid) ** len(w) for w in markov_words(e, 400))
    assert abs(total - 1) < 1e-12


def test_moran_examples():
    e = expand(F(1, 7))
    m = moran_residual(e, solve_lambda(series_of(e)), 60)
    assert m.ok and m.residual <= 1e-10
    e = expand(F(1, 4))
    lam = solve_lambda(series_of(e))
    m = moran_residual(e, lam, 2)
    assert m.ok and m.residual <= float(2 * lam.width)
    e = expand(F(1, 2))
    m = moran_residual(e, solve_lambda(series_of(e)), 10)
    assert m.ok and m.residual == 0


def test_escape_and_entropy():
    for d in (2, 3, 10):
        assert escape_rate(1, d) == 0 and entropy(1, d) == math.log(d)
        assert escape_rate(0, d) == math.log(d) and entropy(0, d) == 0
    assert abs(escape_rate(0.8791, 2) - 0.0838) < 1e-4
    assert abs(entropy(0.8791, 2) - 0.6094) < 1e-4
    with pytest.raises(ValueError):
        escape_rate(1.5)


def test_monotone_on_grid():
    grid = [F(k, 256) for k in range(257)]
    vals = [eta(t) for t in grid]
    for a, b in zip(vals, vals[1:]):
        assert b.eta_lo <= a.eta_hi


def test_plateau_endpoints_two_paths():
    for rec in enumerate_plateaus(2, 6):
        if rec.right == 1:
            continue  # the plateau (1/2, 1) has eta = 0 at both ends by the special case
        a, b = zeta(rec.left, 2, 1e-14), zeta(rec.right, 2, 1e-14)
        assert a.series.kind == "polynomial" and b.series.kind == "rational_function"
        assert abs(a.value - b.value) <= 1e-10
        mid = eta((rec.left + rec.right) / 2)
        assert abs(mid.value - a.value) <= 1e-10


def test_gap_bounds():
    # C1 d^-m <= |t1 - t2| <= d^-m on U cap [t0, 1] with C1 = t0 / d
    import random

    rng = random.Random(3)
    t0 = F(1, 8)
    pts = []
    while len(pts) < 60:
        q = rng.randint(2, 400)
        t = F(rng.randint(1, q - 1), q)
        if t >= t0 and in_U(t):
            pts.append(t)
    from holedim.words import common_prefix_len

    for t1 in pts:
        for t2 in pts:
            if t1 == t2:
                continue
            m = common_prefix_len(expand(t1), expand(t2))
            gap = abs(t1 - t2)
            assert (t0 / 2) * F(1, 2**m) <= gap <= F(1, 2**m)


def test_holder_examples():
    (p,) = holder_probe(F(1, 4), 2, [1])
    assert p.tn == F(1, 7) and p.status == "ok"
    deta = eta(F(1, 7)).value - eta(F(1, 4)).value
    expected = math.log(deta) / math.log(float(F(1, 4) - F(1, 7)))
    assert abs(p.slope - expected) < 1e-9
    with pytest.raises(ValueError):
        holder_probe(F(1, 2), 2, [1])
    with pytest.raises(ValueError, match="locally constant"):
        holder_probe(F(13, 50), 2, [1])


def test_holder_slopes_converge():
    pts = holder_probe(F(1, 4), 2, range(30, 41))
    assert all(p.status == "ok" for p in pts)
    assert all(abs(p.slope - ETA_QUARTER) < 0.05 for p in pts[-5:])


def test_holder_non_dyadic_parameter_from_above():
    pts = holder_probe(F(1, 7), 2, [5, 10, 20])
    assert all(p.tn > F(1, 7) and p.status == "ok" for p in pts)
    assert all(0 < p.slope < 1.2 for p in pts)


def lambert_oracle(n):
    # bisection on exp(-c) - c / n, decreasing in c
    lo, hi = 0.0, float(n)
    for _ in range(200):
        mid = (lo + hi) / 2
        if math.exp(-mid) > mid / n:
            lo = mid
        else:
            hi = mid
    return lo


def test_modulus_examples():
    p = modulus_probe(2, 2)
    assert p.tn == F(1, 4)
    q = eta(F(1, 4))
    assert (p.eta_lo, p.eta_hi) == (q.eta_lo, q.eta_hi)
    p = modulus_probe(2, 100)
    assert abs(p.c_n - lambert_oracle(100)) < 1e-10
    assert abs(p.ratio_refined - 1) <= 0.10
    with pytest.raises(ValueError):
        modulus_probe(2, 1)


def test_modulus_series_matches_expansion_base3():
    for n in (2, 4, 9):
        t = F(2, 3) - F(1, 3**n)
        assert series_of(expand(t, 3)) == modulus_series(3, n)
        assert in_U(t, 3)


def test_modulus_ratio_rises_at_large_n():
    ratios = [modulus_probe(2, n).ratio_naive for n in (100, 200, 500, 1000)]
    assert all(a < b for a, b in zip(ratios, ratios[1:]))
    assert ratios[-1] < 1


def test_expansion_input_equivalence():
    # eta of an explicitly given periodic expansion matches the fraction form
    e = Expansion((), (0, 0, 1, 1), 2)
    assert series_of(e) == series_of(expand(F(1, 5)))
    w = Word.parse("0011")
    assert dim.series_of(Expansion((), w.digits, 2)).period_coeffs == (1, 1, 0, 0)
