"""Dimension of K(t) through the root of P_t(lambda) = 1.

For t in the bifurcation set with non-degenerate expansion .e_1 e_2 ..., the
dimension is eta(t) = -log(lambda) / log(d) where lambda in (0, 1] solves

    P_t(lambda) = sum_k (d - 1 - e_k) lambda^k = 1.

Rational parameters give an exact polynomial or rational-function P_t, so the
root is bracketed by exact sign checks on a dyadic grid: ``RootEnclosure``
endpoints are exact ``Fraction`` values with P_t(lo) <= 1 <= P_t(hi). The
logarithm is the only inexact step and is done in mpmath interval arithmetic,
so ``[eta_lo, eta_hi]`` is a rigorous enclosure as well.
"""

from __future__ import annotations

import math
from contextlib import contextmanager
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence

import mpmath
from mpmath import iv
from mpmath.libmp import to_rational

from .orbits import PlateauRecord, approx_sequence, in_U, plateau_of
from .words import Expansion, Word, as_fraction, check_base, expand

DEFAULT_TOL = 1e-12
DEFAULT_PRECISION = 128
MAX_PRECISION = 4096


class PrecisionError(ArithmeticError):
    """The requested tolerance needs more bits than the precision cap allows."""


class TruncationError(ArithmeticError):
    """A truncated series cannot pin the root down to the requested tolerance."""


@dataclass(frozen=True)
class SeriesRep:
    """Closed form of P_t(X), or a truncation of it with a tail bound.

    kind is one of ``"polynomial"``, ``"rational_function"``, ``"truncated"``.
    For the rational form P(X) = A(X) + X^q B(X) / (1 - X^p) where A carries
    ``preperiod_coeffs`` (degrees 1..q) and B the ``period_coeffs`` (degrees
    1..p). A truncation keeps degrees 1..N exactly and bounds the rest by
    ``tail_bound_coeff * x^(N+1) / (1 - x)``.
    """

    kind: str
    preperiod_coeffs: tuple
    period_coeffs: tuple = ()
    d: int = 2
    truncation_depth: Optional[int] = None
    tail_bound_coeff: int = 0

    def __post_init__(self):
        if self.kind not in ("polynomial", "rational_function", "truncated"):
            raise ValueError(f"unknown series kind {self.kind!r}")
        for c in self.preperiod_coeffs + self.period_coeffs:
            if not 0 <= c <= self.d - 1:
                raise ValueError(f"coefficient {c} outside [0, d-1]")

    @property
    def is_zero(self) -> bool:
        return not any(self.preperiod_coeffs) and not any(self.period_coeffs)

    def coefficient(self, k: int) -> int:
        """Coefficient of X^k (exact only up to the truncation depth)."""
        if k < 1:
            return 0
        q = len(self.preperiod_coeffs)
        if k <= q:
            return self.preperiod_coeffs[k - 1]
        if self.kind == "rational_function":
            return self.period_coeffs[(k - q - 1) % len(self.period_coeffs)]
        return 0

    def limit_at_one(self):
        """lim_{x -> 1-} P(x); ``math.inf`` when the series diverges there."""
        if self.kind == "polynomial":
            return sum(self.preperiod_coeffs)
        if self.kind == "rational_function" and any(self.period_coeffs):
            return math.inf
        if self.kind == "truncated" and self.tail_bound_coeff:
            return math.inf
        return sum(self.preperiod_coeffs)

    def __str__(self):
        a = _format_poly(self.preperiod_coeffs)
        if self.kind == "polynomial":
            return a
        if self.kind == "truncated":
            return f"{a} + O(X^{self.truncation_depth + 1})"
        q, p = len(self.preperiod_coeffs), len(self.period_coeffs)
        b = _format_poly(self.period_coeffs)
        frac = f"({b}) / (1 - X^{p})" if p > 1 else f"({b}) / (1 - X)"
        if q == 0:
            return frac
        shift = "X" if q == 1 else f"X^{q}"
        return f"{a} + {shift} * {frac}"


def _format_poly(coeffs: Sequence[int]) -> str:
    terms = []
    for k, c in enumerate(coeffs, start=1):
        if not c:
            continue
        mono = "X" if k == 1 else f"X^{k}"
        terms.append(mono if c == 1 else f"{c}{mono}")
    return " + ".join(terms) if terms else "0"


def series_of(e: Expansion) -> SeriesRep:
    """Exact P_t(X) for the eventually periodic expansion e of t."""
    d = e.d
    pre = tuple(d - 1 - a for a in e.preperiod)
    per = tuple(d - 1 - a for a in e.period)
    if not any(per):
        while pre and pre[-1] == 0:
            pre = pre[:-1]
        return SeriesRep("polynomial", pre, (), d)
    return SeriesRep("rational_function", pre, per, d)


def series_from_digits(digits: Sequence[int], d: int = 2) -> SeriesRep:
    """Truncated P_t(X) from the first N digits of a (possibly non-periodic) stream."""
    check_base(d)
    coeffs = tuple(d - 1 - int(a) for a in digits)
    return SeriesRep("truncated", coeffs, (), d, len(coeffs), d - 1)


def _poly_add(f: list, g: Sequence[int], shift: int = 0, sign: int = 1) -> list:
    need = len(g) + shift
    if len(f) < need:
        f = f + [0] * (need - len(f))
    for i, c in enumerate(g):
        f[i + shift] += sign * c
    return f


def _excess_polys(rep: SeriesRep):
    """Integer polynomials (lower, upper) whose signs on [0, 1) bound that of P - 1.

    For closed forms both are the same F with sign F(x) = sign(P(x) - 1).
    For a truncation, lower(x) > 0 certifies P(x) > 1 and upper(x) < 0 certifies
    P(x) < 1. Coefficient lists are indexed by degree.
    """
    a = [-1] + list(rep.preperiod_coeffs)
    if rep.kind == "polynomial":
        return a, a
    if rep.kind == "rational_function":
        q, p = len(rep.preperiod_coeffs), len(rep.period_coeffs)
        f = _poly_add(list(a), a, shift=p, sign=-1)          # (A - 1)(1 - X^p)
        f = _poly_add(f, [0] + list(rep.period_coeffs), shift=q)  # + X^q B
        return f, f
    n = rep.truncation_depth
    upper = _poly_add(list(a), a, shift=1, sign=-1)          # (S_N - 1)(1 - X)
    upper = _poly_add(upper, [rep.tail_bound_coeff], shift=n + 1)
    return a, upper


def _sign_at(f: Sequence[int], num: int, bits: int) -> int:
    """Sign of f(num / 2^bits), by exact integer Horner evaluation."""
    v = 0
    deg = len(f) - 1
    for i in range(deg, -1, -1):
        v = v * num + (f[i] << (bits * (deg - i)))
    return (v > 0) - (v < 0)


@dataclass(frozen=True)
class RootEnclosure:
    lo: Fraction
    hi: Fraction

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def mid(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def __contains__(self, x) -> bool:
        return self.lo <= x <= self.hi


def _working_bits(tol, precision: int, max_precision: int) -> int:
    if not tol > 0:
        raise ValueError(f"tolerance must be positive, got {tol}")
    bits = precision
    while Fraction(1, 2**bits) > Fraction(tol):
        bits *= 2
        if bits > max_precision:
            raise PrecisionError(
                f"tolerance {tol} needs more than {max_precision} bits")
    return bits


def _bisect(f: Sequence[int], d: int, bits: int) -> tuple:
    """Bracket the unique sign change of f on [1/d, 1] down to one step of the
    2^-bits grid (the working precision, which already meets the tolerance).

    Returns (lo, hi) with f(lo) <= 0 <= f(hi); lo == hi on an exact grid root.
    """
    lo, hi = (1 << bits) // d, 1 << bits
    while hi - lo > 1:
        mid = (lo + hi) // 2
        s = _sign_at(f, mid, bits)
        if s == 0:
            lo = hi = mid
        elif s < 0:
            lo = mid
        else:
            hi = mid
    return Fraction(lo, 1 << bits), Fraction(hi, 1 << bits)


def solve_lambda(rep: SeriesRep, tol=DEFAULT_TOL, precision: int = DEFAULT_PRECISION,
                 max_precision: int = MAX_PRECISION) -> RootEnclosure:
    """Certified enclosure of the unique root of P(x) = 1 in (0, 1].

    P is strictly increasing on [0, 1) because its coefficients are
    non-negative and not all zero, so plain bisection on exact signs is
    guaranteed to converge. When lim_{x->1} P(x) <= 1 the root is 1.
    """
    if rep.is_zero:
        raise ValueError("P_t is identically zero; no root of P_t = 1")
    bits = _working_bits(tol, precision, max_precision)
    tol = Fraction(tol)
    if rep.limit_at_one() <= 1:
        return RootEnclosure(Fraction(1), Fraction(1))
    lower, upper = _excess_polys(rep)
    if rep.kind != "truncated":
        return RootEnclosure(*_bisect(lower, rep.d, bits))
    # the true root lies between the roots of the two bounding polynomials
    lo = _bisect(upper, rep.d, bits)[0]
    if sum(rep.preperiod_coeffs) <= 1:
        hi = Fraction(1)
    else:
        hi = _bisect(lower, rep.d, bits)[1]
    if hi - lo > tol:
        raise TruncationError(
            f"truncation at depth {rep.truncation_depth} only fixes lambda to "
            f"width {float(hi - lo):.3g} > {float(tol):.3g}")
    return RootEnclosure(lo, hi)


@contextmanager
def _iv_precision(bits: int):
    old = iv.prec
    iv.prec = bits
    try:
        yield
    finally:
        iv.prec = old


def _to_iv(x):
    if isinstance(x, (int, Fraction)):
        x = Fraction(x)
        return iv.mpf(x.numerator) / x.denominator
    return iv.mpf(x)


def _iv_bounds(y) -> tuple:
    lo, hi = y._mpi_
    return _rational(lo), _rational(hi)


def _rational(m) -> Fraction:
    p, q = to_rational(m)
    return Fraction(int(p), int(q))


def eval(rep: SeriesRep, x, bits: int = DEFAULT_PRECISION) -> tuple:
    """Enclosure (lo, hi) of P(x) as exact fractions.

    Rational x is evaluated exactly (lo == hi for closed forms); anything else
    (mpf, interval, numeric string) goes through interval arithmetic at the
    given precision. A truncation widens the upper end by its tail bound.
    """
    exact = isinstance(x, (int, Fraction))
    if exact:
        x = Fraction(x)
        if x < 0 or x > 1:
            raise ValueError("x must lie in [0, 1)")
    with _iv_precision(bits):
        xv = x if exact else _to_iv(x)
        if not exact and not (xv >= 0 and xv <= 1):
            raise ValueError("x must lie in [0, 1)")
        if rep.kind != "polynomial":
            at_one = (x == 1) if exact else bool(xv.b >= 1)
            if at_one:
                raise ValueError(f"{rep.kind} series cannot be evaluated at x >= 1")
        one = Fraction(1) if exact else iv.mpf(1)
        zero = Fraction(0) if exact else iv.mpf(0)

        def poly(coeffs):
            v = zero
            for c in reversed(coeffs):
                v = (v + c) * xv
            return v

        q = len(rep.preperiod_coeffs)
        base = poly(rep.preperiod_coeffs)
        if rep.kind == "rational_function":
            p = len(rep.period_coeffs)
            base = base + xv**q * poly(rep.period_coeffs) / (one - xv**p)
        if exact:
            lo = hi = base
            if rep.kind == "truncated":
                hi = base + rep.tail_bound_coeff * x ** (rep.truncation_depth + 1) / (1 - x)
            return lo, hi
        if rep.kind == "truncated":
            tail = rep.tail_bound_coeff * xv ** (rep.truncation_depth + 1) / (one - xv)
            return _iv_bounds(base)[0], _iv_bounds(base + tail)[1]
        return _iv_bounds(base)


@dataclass(frozen=True)
class DimensionResult:
    t: Optional[Fraction]
    lam: RootEnclosure
    eta_lo: Fraction
    eta_hi: Fraction
    exact: bool
    d: int = 2
    series: Optional[SeriesRep] = None
    plateau: Optional[PlateauRecord] = None

    @property
    def value(self) -> float:
        return float((self.eta_lo + self.eta_hi) / 2)

    @property
    def width(self) -> Fraction:
        return self.eta_hi - self.eta_lo

    def to_dict(self) -> dict:
        return {
            "t": None if self.t is None else str(self.t),
            "lambda_lo": round_down(self.lam.lo),
            "lambda_hi": round_up(self.lam.hi),
            "eta_lo": round_down(self.eta_lo),
            "eta_hi": round_up(self.eta_hi),
            "exact": self.exact,
        }


def round_down(x: Fraction) -> float:
    f = float(x)
    return f if Fraction(f) <= x else math.nextafter(f, -math.inf)


def round_up(x: Fraction) -> float:
    f = float(x)
    return f if Fraction(f) >= x else math.nextafter(f, math.inf)


def eta_bounds(lam: RootEnclosure, d: int, bits: int = DEFAULT_PRECISION) -> tuple:
    """Outward-rounded enclosure of -log(lambda)/log(d) over the root enclosure."""
    def neg_log(x: Fraction, side: int) -> Fraction:
        if x == 1:
            return Fraction(0)
        if x == Fraction(1, d):
            return Fraction(1)
        return _iv_bounds(-iv.log(_to_iv(x)) / iv.log(d))[side]

    with _iv_precision(bits + 32):
        lo = neg_log(lam.hi, 0)
        hi = neg_log(lam.lo, 1)
    return max(lo, Fraction(0)), min(hi, Fraction(1))


def _from_series(t, rep: SeriesRep, tol, precision, max_precision,
                 plateau=None) -> DimensionResult:
    lam = solve_lambda(rep, tol, precision, max_precision)
    bits = _working_bits(tol, precision, max_precision)
    lo, hi = eta_bounds(lam, rep.d, bits)
    return DimensionResult(t, lam, lo, hi, lam.lo == lam.hi, rep.d, rep, plateau)


def _special(t, d, value_) -> DimensionResult:
    lam = Fraction(1, d) if value_ == 1 else Fraction(1)
    return DimensionResult(t, RootEnclosure(lam, lam), Fraction(value_),
                           Fraction(value_), True, d)


def eta(t, d: int = 2, tol=DEFAULT_TOL, precision: int = DEFAULT_PRECISION,
        max_precision: int = MAX_PRECISION) -> DimensionResult:
    """Hausdorff dimension of K(t), as a certified enclosure.

    Off the bifurcation set the value is read at the left endpoint of the
    plateau containing t, where the root formula applies.
    """
    check_base(d)
    t = as_fraction(t)
    if not 0 <= t <= 1:
        raise ValueError(f"t must be in [0, 1], got {t}")
    if t == 0:
        return _special(t, d, 1)
    if t >= Fraction(d - 1, d):
        return _special(t, d, 0)
    plateau = None
    anchor = t
    if not in_U(t, d):
        plateau = plateau_of(t, d)
        anchor = plateau.left
    return _from_series(t, series_of(expand(anchor, d)), tol, precision,
                        max_precision, plateau)


def zeta(t, d: int = 2, tol=DEFAULT_TOL, precision: int = DEFAULT_PRECISION,
         max_precision: int = MAX_PRECISION) -> DimensionResult:
    """The root formula applied to the expansion of t whether or not t is in U.

    Agrees with ``eta`` on the bifurcation set and dominates it elsewhere. For
    t = 1 the series vanishes identically and the value is taken to be 0.
    """
    check_base(d)
    t = as_fraction(t)
    if not 0 <= t <= 1:
        raise ValueError(f"t must be in [0, 1], got {t}")
    if t == 0:
        return _special(t, d, 1)
    rep = series_of(expand(t, d))
    if rep.is_zero:
        return _special(t, d, 0)
    return _from_series(t, rep, tol, precision, max_precision)


def markov_words(e: Expansion, depth: int) -> list:
    """Words e_1...e_{k-1} s with s > e_k, for k = 1..depth."""
    out = []
    for k in range(1, depth + 1):
        head = e.digits(k - 1)
        for s in range(e.digit(k) + 1, e.d):
            out.append(Word(head + (s,), e.d))
    return out


@dataclass(frozen=True)
class MoranCheck:
    residual: float
    bound: float
    ok: bool


def _weighted_sum(coeffs: Sequence[int], x: Fraction) -> Fraction:
    """sum_k coeffs[k-1] x^k, exactly."""
    acc = Fraction(0)
    for c in reversed(coeffs):
        acc = (acc + c) * x
    return acc


def moran_residual(e: Expansion, lam: RootEnclosure, depth: int) -> MoranCheck:
    """|sum_{k<=depth} (d-1-e_k) lam^k - 1| at the enclosure midpoint.

    The returned bound covers the neglected tail and the enclosure width; the
    Moran identity holds when ``residual <= bound``.
    """
    d = e.d
    rep = series_of(e)
    coeffs = [rep.coefficient(k) for k in range(1, depth + 1)]
    m = lam.mid
    residual = abs(_weighted_sum(coeffs, m) - 1)
    if rep.kind == "polynomial":
        tail = _weighted_sum(rep.preperiod_coeffs, lam.hi) - _weighted_sum(
            rep.preperiod_coeffs[:depth], lam.hi)
    elif lam.hi < 1:
        tail = (d - 1) * lam.hi ** (depth + 1) / (1 - lam.hi)
    else:
        tail = math.inf
    derivative = sum(k * c * lam.hi ** (k - 1) for k, c in enumerate(coeffs, start=1) if c)
    bound = tail + derivative * lam.width
    return MoranCheck(round_up(residual), float(bound) if bound == math.inf
                      else round_down(bound), residual <= bound)


def escape_rate(eta_value, d: int = 2) -> float:
    """gamma = (1 - eta) log d, in nats."""
    if not 0 <= eta_value <= 1:
        raise ValueError("eta must lie in [0, 1]")
    return (1 - float(eta_value)) * math.log(d)


def entropy(eta_value, d: int = 2) -> float:
    """Topological entropy eta log d of g restricted to K(t), in nats."""
    if not 0 <= eta_value <= 1:
        raise ValueError("eta must lie in [0, 1]")
    return float(eta_value) * math.log(d)


def _log(x: Fraction) -> float:
    return math.log(x.numerator) - math.log(x.denominator)


@dataclass(frozen=True)
class HolderPoint:
    n: int
    tn: Fraction
    dt: Fraction
    deta_lo: Fraction
    deta_hi: Fraction
    slope: Optional[float]
    slope_lo: Optional[float]
    slope_hi: Optional[float]
    status: str


def holder_probe(t, d: int = 2, n_values: Iterable[int] = range(1, 21),
                 tol=DEFAULT_TOL, precision: int = DEFAULT_PRECISION,
                 max_precision: int = MAX_PRECISION) -> list:
    """Slopes log|eta(t) - eta(t_n)| / log|t - t_n| along the one-sided approximants."""
    t = as_fraction(t)
    if not 0 < t < Fraction(d - 1, d):
        raise ValueError(f"holder probe needs 0 < t < (d-1)/d, got {t}")
    if not in_U(t, d):
        raise ValueError(f"{t} is a stable parameter: eta is locally constant there")
    out = []
    for n in n_values:
        tn = approx_sequence(t, d, n)
        dt = abs(t - tn)
        # differences scale at least like dt, so resolve well below it
        tol_n = min(Fraction(tol), dt / 10**8)
        a = eta(t, d, tol_n, precision, max_precision)
        b = eta(tn, d, tol_n, precision, max_precision)
        # eta is non-increasing, so the left parameter carries the larger value
        left, right = (a, b) if tn > t else (b, a)
        deta_lo = left.eta_lo - right.eta_hi
        deta_hi = left.eta_hi - right.eta_lo
        if deta_lo <= 0:
            out.append(HolderPoint(n, tn, dt, deta_lo, deta_hi, None, None, None,
                                   "precision insufficient"))
            continue
        log_dt = _log(dt)
        s_lo, s_hi = _log(deta_hi) / log_dt, _log(deta_lo) / log_dt
        out.append(HolderPoint(n, tn, dt, deta_lo, deta_hi, (s_lo + s_hi) / 2,
                               s_lo, s_hi, "ok"))
    return out


@dataclass(frozen=True)
class ModulusPoint:
    n: int
    tn: Fraction
    eta_lo: Fraction
    eta_hi: Fraction
    eta: float
    c_n: float
    ratio_naive: float
    ratio_refined: float


def modulus_series(d: int, n: int) -> SeriesRep:
    """P(X) = X + X^n, the series of t* - d^-n."""
    return SeriesRep("polynomial", (1,) + (0,) * (n - 2) + (1,), (), d)


def lambert_scale(n) -> float:
    """The solution c of exp(-c) = c / n."""
    return float(mpmath.lambertw(n).real)


def modulus_probe(d: int = 2, n: int = 10, tol=DEFAULT_TOL,
                  precision: int = DEFAULT_PRECISION,
                  max_precision: int = MAX_PRECISION) -> ModulusPoint:
    """eta at t_n = (d-1)/d - d^-n against log n / (n log d) and c_n / (n log d)."""
    check_base(d)
    if n < 2:
        raise ValueError("n must be >= 2")
    tn = Fraction(d - 1, d) - Fraction(1, d**n)
    rep = modulus_series(d, n)
    lam = solve_lambda(rep, tol, precision, max_precision)
    lo, hi = eta_bounds(lam, d, _working_bits(tol, precision, max_precision))
    e = float((lo + hi) / 2)
    c_n = lambert_scale(n)
    scale = n * math.log(d)
    return ModulusPoint(n, tn, lo, hi, e, c_n, e * scale / math.log(n), e * scale / c_n)
