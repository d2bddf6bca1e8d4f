"""Base-d digit words, eventually periodic expansions and Lyndon words.

Everything here is exact: parameters are :class:`fractions.Fraction` values and
words are immutable tuples of digits.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Iterable, Sequence, Union


def check_base(d: int) -> int:
    if not isinstance(d, int) or d < 2:
        raise ValueError(f"base must be an integer >= 2, got {d!r}")
    return d


@dataclass(frozen=True)
class Word:
    """A finite word over the alphabet {0, ..., d-1}."""

    digits: tuple
    d: int = 2

    def __post_init__(self):
        check_base(self.d)
        object.__setattr__(self, "digits", tuple(int(a) for a in self.digits))
        for a in self.digits:
            if not 0 <= a < self.d:
                raise ValueError(f"digit {a} outside alphabet of base {self.d}")

    def __len__(self):
        return len(self.digits)

    def __iter__(self):
        return iter(self.digits)

    def __getitem__(self, item):
        if isinstance(item, slice):
            return Word(self.digits[item], self.d)
        return self.digits[item]

    def __add__(self, other: "Word") -> "Word":
        if other.d != self.d:
            raise ValueError("cannot concatenate words of different bases")
        return Word(self.digits + other.digits, self.d)

    def __str__(self):
        return format_digits(self.digits, self.d)

    @classmethod
    def parse(cls, text: str, d: int = 2) -> "Word":
        return cls(parse_digits(text, d), d)


def format_digits(digits: Sequence[int], d: int) -> str:
    if d <= 10:
        return "".join(str(a) for a in digits)
    return ",".join(str(a) for a in digits)


def parse_digits(text: str, d: int) -> tuple:
    text = text.strip()
    if not text:
        return ()
    if d <= 10 and "," not in text:
        digits = tuple(int(c) for c in text)
    else:
        digits = tuple(int(c) for c in text.split(","))
    for a in digits:
        if not 0 <= a < d:
            raise ValueError(f"digit {a} outside alphabet of base {d}")
    return digits


def _canonical(pre: tuple, per: tuple) -> tuple:
    """Reduce (preperiod, period) to minimal period and minimal preperiod."""
    p = len(per)
    for q in range(1, p + 1):
        if p % q == 0 and per[:q] * (p // q) == per:
            per = per[:q]
            break
    while pre and pre[-1] == per[-1]:
        pre = pre[:-1]
        per = per[-1:] + per[:-1]
    return pre, per


@dataclass(frozen=True)
class Expansion:
    """Eventually periodic, non-degenerate base-d expansion ``.pre(per)``.

    The representation is canonical, so two expansions are equal exactly when
    they denote the same number.
    """

    preperiod: tuple
    period: tuple
    d: int = 2

    def __post_init__(self):
        check_base(self.d)
        pre = tuple(int(a) for a in self.preperiod)
        per = tuple(int(a) for a in self.period)
        if not per:
            raise ValueError("period must be non-empty")
        if not any(per):
            raise ValueError("degenerate expansion: period is all zeros")
        for a in pre + per:
            if not 0 <= a < self.d:
                raise ValueError(f"digit {a} outside alphabet of base {self.d}")
        pre, per = _canonical(pre, per)
        object.__setattr__(self, "preperiod", pre)
        object.__setattr__(self, "period", per)

    def digit(self, k: int) -> int:
        """The k-th digit, 1-indexed."""
        if k < 1:
            raise IndexError("digits are indexed from 1")
        q = len(self.preperiod)
        if k <= q:
            return self.preperiod[k - 1]
        return self.period[(k - q - 1) % len(self.period)]

    def digits(self, n: int) -> tuple:
        return tuple(self.digit(k) for k in range(1, n + 1))

    def prefix(self, n: int) -> Word:
        return Word(self.digits(n), self.d)

    def is_d_rational(self) -> bool:
        return self.period == (self.d - 1,)

    def __str__(self):
        return (format_digits(self.preperiod, self.d)
                + "(" + format_digits(self.period, self.d) + ")")

    @classmethod
    def parse(cls, text: str, d: int = 2) -> "Expansion":
        text = text.strip()
        if not (text.endswith(")") and "(" in text):
            raise ValueError(f"expansion literal must look like 'pre(per)', got {text!r}")
        pre, per = text[:-1].split("(", 1)
        return cls(parse_digits(pre, d), parse_digits(per, d), d)


def as_fraction(x) -> Fraction:
    if isinstance(x, float):
        raise TypeError("floating-point parameters are not accepted; use Fraction")
    return Fraction(x)


def expand(x, d: int = 2) -> Expansion:
    """Non-degenerate base-d expansion of a rational x in (0, 1]."""
    check_base(d)
    x = as_fraction(x)
    if not 0 < x <= 1:
        raise ValueError(f"expand needs 0 < x <= 1, got {x}")
    p, q = x.numerator, x.denominator
    if x == 1:
        return Expansion((), (d - 1,), d)
    r = q
    while (g := math.gcd(r, d)) > 1:
        r //= g
    if r == 1:
        # d-adic: terminating expansion, rewritten with a trailing (d-1)-tail
        digits = []
        while p:
            a, p = divmod(p * d, q)
            digits.append(a)
        digits[-1] -= 1
        return Expansion(tuple(digits), (d - 1,), d)
    seen = {}
    digits = []
    while p not in seen:
        seen[p] = len(digits)
        a, p = divmod(p * d, q)
        digits.append(a)
    start = seen[p]
    return Expansion(tuple(digits[:start]), tuple(digits[start:]), d)


def value(w: Union[Word, Expansion]) -> Fraction:
    """Exact rational value of a finite word ``.w`` or of an expansion."""
    if isinstance(w, Word):
        return _finite_value(w.digits, w.d)
    pre, per, d = w.preperiod, w.period, w.d
    p = len(per)
    periodic = _finite_value(per, d) * Fraction(d**p, d**p - 1)
    return _finite_value(pre, d) + periodic / d ** len(pre)


def _finite_value(digits: Sequence[int], d: int) -> Fraction:
    n = 0
    for a in digits:
        n = n * d + a
    return Fraction(n, d ** len(digits))


def periodic_value(w: Word) -> Fraction:
    """Value of the purely periodic expansion ``.overline{w}``."""
    m = len(w)
    return value(w) * Fraction(w.d**m, w.d**m - 1)


def concat_value(S: Word, x) -> Fraction:
    """The number ``S . x`` whose expansion is S followed by that of x."""
    x = as_fraction(x)
    if not 0 <= x <= 1:
        raise ValueError("concat_value needs x in [0, 1]")
    return value(S) + x / S.d ** len(S)


def strongly_less(S: Word, T: Word) -> bool:
    """S << T: S drops strictly below T within their common length."""
    if S.d != T.d:
        raise ValueError("words must share a base")
    for a, b in zip(S.digits, T.digits):
        if a != b:
            return a < b
    return False


def _require_nonempty(S: Word):
    if len(S) == 0:
        raise ValueError("empty word")


def is_lyndon(S: Word) -> bool:
    """Suffix form: S is strongly less than each of its proper suffixes."""
    _require_nonempty(S)
    return all(strongly_less(S, S[i:]) for i in range(1, len(S)))


def is_lyndon_rotation(S: Word) -> bool:
    """Rotation form: S is strictly smaller than each of its proper rotations."""
    _require_nonempty(S)
    w = S.digits
    return all(w < w[i:] + w[:i] for i in range(1, len(w)))


def _duval_lyndon(d: int, max_len: int):
    # Fredricksen-Kessler-Maiorana successor: yields every Lyndon word of
    # length <= max_len over {0..d-1} in lexicographic order.
    w = [-1]
    while w:
        w[-1] += 1
        yield tuple(w)
        m = len(w)
        while len(w) < max_len:
            w.append(w[len(w) - m])
        while w and w[-1] == d - 1:
            w.pop()


def enumerate_lyndon(d: int, max_len: int) -> list:
    """Lyndon words of length <= max_len not ending in 0, sorted by value."""
    check_base(d)
    if max_len < 1:
        raise ValueError("max_len must be >= 1")
    words = [Word(w, d) for w in _duval_lyndon(d, max_len) if w[-1] != 0]
    words.sort(key=value)
    return words


def all_words(d: int, length: int) -> Iterable[Word]:
    for w in product(range(d), repeat=length):
        yield Word(w, d)


def common_prefix_len(e1: Expansion, e2: Expansion):
    """Length of the longest common prefix; ``math.inf`` for equal expansions."""
    if e1.d != e2.d:
        raise ValueError("expansions must share a base")
    if e1 == e2:
        return math.inf
    # unequal eventually periodic streams differ before this bound
    bound = max(len(e1.preperiod), len(e2.preperiod)) + math.lcm(
        len(e1.period), len(e2.period))
    for k in range(1, bound + 1):
        if e1.digit(k) != e2.digit(k):
            return k - 1
    raise AssertionError("unreachable: distinct expansions agree past the bound")
