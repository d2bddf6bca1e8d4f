"""Exact dynamics of x -> dx mod 1 on rationals with the hole (0, t).

Covers survivor-set membership, membership of a parameter in the bifurcation
set, the Lyndon-labelled plateaus of its complement and the one-sided
approximating sequences used for the Hölder probes.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .words import (
    Expansion,
    Word,
    as_fraction,
    check_base,
    enumerate_lyndon,
    expand,
    is_lyndon,
    periodic_value,
    value,
)


def step(x, d: int = 2) -> Fraction:
    x = as_fraction(x)
    if not 0 <= x < 1:
        raise ValueError(f"step needs x in [0, 1), got {x}")
    return (d * x) % 1


@dataclass(frozen=True)
class Orbit:
    points: tuple
    cycle_start: int

    def __len__(self):
        return len(self.points)

    def __iter__(self):
        return iter(self.points)


def orbit(x, d: int = 2) -> Orbit:
    """Forward orbit of x up to its first repeated point.

    The orbit of a rational is eventually periodic because the denominator
    never grows; ``points[cycle_start:]`` is the cycle.
    """
    check_base(d)
    x = as_fraction(x)
    if not 0 <= x < 1:
        raise ValueError(f"orbit needs x in [0, 1), got {x}")
    seen = {}
    points = []
    while x not in seen:
        seen[x] = len(points)
        points.append(x)
        x = (d * x) % 1
    return Orbit(tuple(points), seen[x])


def _in_hole(y: Fraction, t: Fraction) -> bool:
    return 0 < y < t


def in_K(x, t, d: int = 2) -> bool:
    """Whether x lies in the survivor set K(t)."""
    x, t = as_fraction(x), as_fraction(t)
    if not 0 <= t <= 1:
        raise ValueError("t must be in [0, 1]")
    if x == 1:
        x = Fraction(0)
    if t == 0:
        return True
    if t == 1:
        return x == 0
    return not any(_in_hole(y, t) for y in orbit(x, d))


@dataclass(frozen=True)
class MembershipVerdict:
    in_set: bool
    witness_k: Optional[int]
    orbit_len: int


def in_bifurcation_set(t, d: int = 2) -> MembershipVerdict:
    """Decide t in U, i.e. whether the orbit of t never enters (0, t).

    When it does, ``witness_k`` is the first such iterate.
    """
    check_base(d)
    t = as_fraction(t)
    if not 0 <= t <= 1:
        raise ValueError(f"t must be in [0, 1], got {t}")
    if t == 1:
        return MembershipVerdict(True, None, 1)
    orb = orbit(t, d)
    for k, y in enumerate(orb.points):
        if _in_hole(y, t):
            return MembershipVerdict(False, k, len(orb))
    return MembershipVerdict(True, None, len(orb))


def in_U(t, d: int = 2) -> bool:
    return in_bifurcation_set(t, d).in_set


@dataclass(frozen=True)
class PlateauRecord:
    label: Word
    left: Fraction
    right: Fraction
    length: int

    def __contains__(self, t) -> bool:
        return self.left < as_fraction(t) < self.right

    def to_dict(self) -> dict:
        return {
            "label": str(self.label),
            "left": str(self.left),
            "right": str(self.right),
            "length": self.length,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


def plateau_interval(S: Word) -> PlateauRecord:
    """The plateau (.S, .overline{S}) labelled by the Lyndon word S."""
    if len(S) == 0 or S.digits[-1] == 0:
        raise ValueError(f"plateau label must end in a nonzero digit, got {S}")
    if not is_lyndon(S):
        raise ValueError(f"{S} is not a Lyndon word, so (.S, .S^inf) is not a plateau")
    return PlateauRecord(S, value(S), periodic_value(S), len(S))


def _strip_zeros(digits: tuple) -> tuple:
    while digits and digits[-1] == 0:
        digits = digits[:-1]
    return digits


def plateau_of(t, d: int = 2) -> Optional[PlateauRecord]:
    """The component of [0,1] \\ U containing t, or None when t is in U."""
    t = as_fraction(t)
    if not 0 < t < 1:
        raise ValueError(f"plateau_of needs t in (0, 1), got {t}")
    verdict = in_bifurcation_set(t, d)
    if verdict.in_set:
        return None
    k = verdict.witness_k
    label = Word(_strip_zeros(expand(t, d).digits(k)), d)
    return plateau_interval(label)


def enumerate_plateaus(d: int, max_len: int) -> list:
    """All plateaus whose label has length <= max_len, sorted by left endpoint."""
    return sorted((plateau_interval(S) for S in enumerate_lyndon(d, max_len)),
                  key=lambda rec: rec.left)


def approx_sequence(t, d: int, n: int) -> Fraction:
    """n-th term of a one-sided approximating sequence t_n -> t inside U.

    For t not d-rational, t_n = .e_1...e_n (d-1)^inf lies above t. For a
    d-rational t = .e_1...e_k (d-1)^inf, t_n = .overline{e_1...e_k (d-1)^n}
    lies below t. In both cases the digits of t_n dominate (resp. are
    dominated by) those of t position by position.

    In the d-rational case small n can fail: 7/16 = .0110(1) gives
    t_1 = .overline{01101} outside U. n >= k - 1 always works, since then the
    comparison of the tail with (d-1)^n is decided inside both words; smaller
    n is accepted only when the result is verified to lie in U.
    """
    t = as_fraction(t)
    if n < 1:
        raise ValueError("n must be >= 1")
    if not 0 < t < 1:
        raise ValueError(f"t must be in (0, 1), got {t}")
    if not in_U(t, d):
        raise ValueError(f"{t} is not in the bifurcation set")
    e = expand(t, d)
    if e.is_d_rational():
        head = e.preperiod
        if not head or head[0] == d - 1:
            raise ValueError(
                f"{t} = .{e}: d-rational branch needs a leading digit other than d-1")
        tn = periodic_value(Word(head + (d - 1,) * n, d))
        if not in_U(tn, d):
            raise ValueError(f"n={n} too small for {t}: {tn} is not in U "
                             f"(n >= {len(head) - 1} is always enough)")
    else:
        tn = value(Expansion(e.digits(n), (d - 1,), d))
    if not in_U(tn, d):
        raise AssertionError(f"approximant {tn} of {t} fell outside U")
    return tn
