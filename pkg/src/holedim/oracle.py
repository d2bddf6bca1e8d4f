"""Brute-force checks that share no code path with the root formula.

Depth-n cylinders are counted combinatorially from the digits of t, and the
counts give growth-rate estimates of the dimension, the escape rate and the
dimension of the bifurcation set above t.
"""

from __future__ import annotations

import csv
import io
import json
import math
import random
from dataclasses import asdict, dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .orbits import in_K, in_U, orbit
from .words import as_fraction, check_base, concat_value, expand

DEFAULT_BUDGET = 5_000_000


class BudgetExceeded(RuntimeError):
    def __init__(self, message, depth_reached):
        super().__init__(message)
        self.depth_reached = depth_reached


def prefix_digits(t, d: int, n: int) -> tuple:
    """First n digits of the non-degenerate expansion, via ceil(t d^n) - 1."""
    t = as_fraction(t)
    top = math.ceil(t * d**n) - 1
    out = []
    for _ in range(n):
        top, a = divmod(top, d)
        out.append(a)
    return tuple(reversed(out))


@dataclass(frozen=True)
class SurvivorStats:
    t: Fraction
    d: int
    depth: int
    count: int
    log_count_over_n: float
    gamma_estimate: float
    eta_estimate: float

    def row(self) -> dict:
        out = asdict(self)
        out["t"] = str(self.t)
        return out


def _counter(eps: tuple, d: int, budget: int):
    # State after reading a word w left to right: the set of lengths l such
    # that the last l digits of w equal eps[:l] (suffixes still tied with the
    # prefix of t), and whether some suffix already fell below its prefix, in
    # which case the rest of w must be zeros. Suffixes that went above are
    # settled and dropped.
    visits = [0]
    n = len(eps)

    @lru_cache(maxsize=None)
    def count(tied: frozenset, zeros_only: bool, remaining: int) -> int:
        visits[0] += 1
        if visits[0] > budget:
            raise BudgetExceeded(f"survivor enumeration exceeded {budget} states",
                                 n - remaining)
        if remaining == 0:
            return 1
        total = 0
        for a in range(d):
            if zeros_only and a:
                break
            new_tied = set()
            must_zero = zeros_only
            ok = True
            for l in tied | {0}:
                e = eps[l]
                if a == e:
                    new_tied.add(l + 1)
                elif a < e:
                    if a == 0 and not any(eps[:l]):
                        must_zero = True
                    else:
                        ok = False
                        break
            if ok:
                total += count(frozenset(new_tied), must_zero, remaining - 1)
        return total

    return count


def survivor_count(t, d: int = 2, n: int = 10, budget: int = DEFAULT_BUDGET) -> SurvivorStats:
    """Number of length-n words all of whose suffixes are >= the same-length
    prefix of t, or are all zeros.

    These are the depth-n cylinders meeting the set of points that survive n
    steps; the count is memoised on automaton states, so its cost does not
    grow like d^n.
    """
    check_base(d)
    t = as_fraction(t)
    if not 0 < t < 1:
        raise ValueError(f"t must be in (0, 1), got {t}")
    if n < 1:
        raise ValueError("n must be >= 1")
    eps = prefix_digits(t, d, n)
    count = _counter(eps, d, budget)(frozenset(), False, n)
    return _stats(t, d, n, count)


def _stats(t, d, n, count) -> SurvivorStats:
    log_count = math.log(count) / n
    eta_est = log_count / math.log(d)
    return SurvivorStats(t, d, n, count, log_count, (1 - eta_est) * math.log(d), eta_est)


def survivor_count_exhaustive(t, d: int, n: int) -> int:
    """Same count by scanning all d^n words; a suffix of length L is an integer
    w mod d^L compared with the integer formed by the first L digits of t."""
    words = np.arange(d**n, dtype=np.int64)
    ok = np.ones(d**n, dtype=bool)
    for L in range(1, n + 1):
        target = math.ceil(as_fraction(t) * d**L) - 1
        suffix = words % d**L
        ok &= (suffix >= target) | (suffix == 0)
    return int(ok.sum())


@dataclass(frozen=True)
class Estimate:
    value: float
    residual: float
    n_min: int
    n_max: int

    def __float__(self):
        return self.value


def _fit(ns, logs, threshold):
    ns, logs = np.asarray(ns, float), np.asarray(logs, float)
    slope, intercept = np.polyfit(ns, logs, 1)
    resid = float(np.sqrt(np.mean((logs - slope * ns - intercept) ** 2)))
    return float(slope), resid


def dim_estimate(t, d: int = 2, n_min: int = 10, n_max: int = 28,
                 budget: int = DEFAULT_BUDGET, residual_threshold: float = 0.05) -> Estimate:
    """Least-squares slope of log_d(count) against depth.

    When the fit over the full range is poor, only its upper half is used.
    """
    if not n_min < n_max:
        raise ValueError("need n_min < n_max")
    ns = list(range(n_min, n_max + 1))
    logs = [math.log(survivor_count(t, d, n, budget).count, d) for n in ns]
    slope, resid = _fit(ns, logs, residual_threshold)
    lo = n_min
    if resid > residual_threshold and len(ns) >= 4:
        half = len(ns) // 2
        slope, resid = _fit(ns[half:], logs[half:], residual_threshold)
        lo = ns[half]
    return Estimate(slope, resid, lo, n_max)


def escape_estimate(t, d: int = 2, n: int = 28, budget: int = DEFAULT_BUDGET) -> float:
    """-(1/n) log(count d^-n), in nats."""
    return survivor_count(t, d, n, budget).gamma_estimate


def bif_words(t, d: int, n: int, budget: int = DEFAULT_BUDGET):
    """Length-n words w >= prefix of t whose suffixes are all >= w's own
    same-length prefix (depth-n certificates for the bifurcation set above t).

    Prenecklace-style generation: ``p`` is the period of the word read so
    far; a digit below w[len - p] kills every extension.
    """
    eps = prefix_digits(t, d, n)
    w = []
    visits = [0]

    def rec(p: int, above: bool):
        visits[0] += 1
        if visits[0] > budget:
            raise BudgetExceeded(f"bifurcation-set enumeration exceeded {budget} nodes", len(w))
        k = len(w)
        if k == n:
            yield tuple(w)
            return
        start = 0 if k == 0 else w[k - p]
        lowest = start if above else max(start, eps[k])
        for a in range(lowest, d):
            w.append(a)
            new_p = p if k and a == w[k - p] else k + 1
            yield from rec(new_p, above or a > eps[k])
            w.pop()

    yield from rec(1, False)


def bif_dim_estimate(t, d: int = 2, n: int = 24, budget: int = DEFAULT_BUDGET) -> Estimate:
    """log_d(#certificates)/n as a box-count proxy for dim(U cap [t, 1])."""
    count = sum(1 for _ in bif_words(t, d, n, budget))
    return Estimate(math.log(count, d) / n if count else 0.0, 0.0, n, n)


def _greedy_decomposition(x: Fraction, t: Fraction, d: int, max_words: int = 10_000):
    """Split the expansion of x into words of the Markov set of t.

    Returns the list of words until the remainder repeats or equals t, or None
    when some block fails (a digit below the expansion of t).
    """
    et = expand(t, d)
    seen = set()
    words = []
    y = x
    while len(words) < max_words:
        if y == t:
            return words
        if y in seen:
            return words
        seen.add(y)
        ey = expand(y if y else Fraction(1), d)
        k = 1
        while ey.digit(k) == et.digit(k):
            k += 1
        if ey.digit(k) < et.digit(k):
            return None
        words.append(ey.prefix(k))
        y = (y * d**k) % 1
    return words


@dataclass
class CrossCheckReport:
    t: Fraction
    forward_checked: int = 0
    forward_failures: int = 0
    backward_checked: int = 0
    backward_failures: int = 0

    @property
    def ok(self) -> bool:
        return not (self.forward_failures or self.backward_failures)


def k_membership_crosscheck(t, d: int = 2, samples: int = 200, seed: int = 0,
                            max_blocks: int = 6, depth: int = 12,
                            max_denominator: int = 500) -> CrossCheckReport:
    """Check that concatenations of Markov words land in K(t), and that points
    of K(t) decompose into Markov words."""
    from .dimension import markov_words

    t = as_fraction(t)
    if not in_U(t, d):
        raise ValueError(f"{t} is not in the bifurcation set")
    rng = random.Random(seed)
    e = expand(t, d)
    alphabet = markov_words(e, depth)
    tails = sorted(set(orbit(t, d).points) | {Fraction(0)})
    report = CrossCheckReport(t)
    for _ in range(samples):
        blocks = [rng.choice(alphabet) for _ in range(rng.randint(1, max_blocks))]
        x = rng.choice(tails)
        for S in reversed(blocks):
            x = concat_value(S, x)
        report.forward_checked += 1
        if not in_K(x % 1, t, d):
            report.forward_failures += 1
    found = 0
    while found < samples:
        q = rng.randint(2, max_denominator)
        x = Fraction(rng.randint(1, q - 1), q)
        if not in_K(x, t, d):
            continue
        found += 1
        report.backward_checked += 1
        if _greedy_decomposition(x, t, d) is None:
            report.backward_failures += 1
    return report


def stats_csv(rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["t", "d", "n", "count", "eta_estimate", "gamma_estimate"])
    for s in rows:
        writer.writerow([str(s.t), s.d, s.depth, s.count, repr(s.eta_estimate),
                         repr(s.gamma_estimate)])
    return buf.getvalue()


def stats_json(rows) -> str:
    return json.dumps([s.row() for s in rows], indent=2)
