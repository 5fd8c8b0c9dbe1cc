"""Periodic and preperiod-1 points of the tripling map, with B/D bookkeeping.

A periodic point x of period 2n with t^n(x) = x + 1/2 is of type B and
block period n; every other periodic point is of type D with block
period equal to its period.  Preperiod-1 points are the two non-cycle
preimages of each periodic point; they are the endpoints of the
co-periodic leaves the builder draws.

Enumeration runs over numerators modulo 3^k - 1 (every period-k point
has such a denominator) and filters by exact period.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .angles import Angle, antipode, orbit_info, tripling
from .chords import Chord, image

__all__ = [
    "PeriodicClass",
    "ChordOrbit",
    "classify_periodic",
    "periodic_points",
    "preperiod1_points",
    "chord_orbit",
]


@dataclass(frozen=True, slots=True)
class PeriodicClass:
    ptype: str  # "B" or "D"
    block_period: int
    point_period: int


@dataclass(frozen=True, slots=True)
class ChordOrbit:
    """Eventually periodic orbit of a chord: preperiod part plus one cycle."""

    preperiod: int
    pointwise_period: int
    setwise_period: int
    chords: tuple[Chord, ...]

    def cycle(self) -> tuple[Chord, ...]:
        return self.chords[self.preperiod:]


def classify_periodic(x: Angle) -> PeriodicClass:
    """Type (B/D) and block period of a periodic angle; non-periodic input rejected."""
    info = orbit_info(x)
    if info.preperiod != 0:
        raise ValueError(f"{x} is not periodic (preperiod {info.preperiod})")
    p = info.period
    if p % 2 == 0:
        half = p // 2
        y = x
        for _ in range(half):
            y = tripling(y)
        if y == antipode(x):
            return PeriodicClass("B", half, p)
    return PeriodicClass("D", p, p)


def _divisors(k: int) -> list[int]:
    return [d for d in range(1, k + 1) if k % d == 0]


def _exact_period_numerators(k: int) -> np.ndarray:
    """Numerators a (mod 3^k - 1) of angles a/(3^k - 1) with exact period k."""
    modulus = 3**k - 1
    a = np.arange(modulus, dtype=np.int64)
    keep = np.ones(modulus, dtype=bool)
    for d in _divisors(k):
        if d == k:
            break
        # period divides d  <=>  (3^d - 1) * a == 0 mod (3^k - 1)
        keep &= (a * (3**d - 1)) % modulus != 0
    return a[keep]


def _type_b_numerators(k: int) -> np.ndarray:
    """Numerators of type-B block-k points among a/(3^{2k} - 1)."""
    modulus = 3 ** (2 * k) - 1
    nums = _exact_period_numerators(2 * k)
    # t^k(x) = x + 1/2: (3^k - 1) a == modulus/2 mod modulus
    sel = (nums * (3**k - 1) - modulus // 2) % modulus == 0
    return nums[sel]


def periodic_points(k: int) -> list[Angle]:
    """All angles of exact tripling-period k, sorted."""
    if k < 1:
        raise ValueError("period must be positive")
    modulus = 3**k - 1
    return sorted(Fraction(int(a), modulus) for a in _exact_period_numerators(k))


def _block_points(block: int, ptype: str) -> list[Angle]:
    if ptype == "B":
        modulus = 3 ** (2 * block) - 1
        return sorted(Fraction(int(a), modulus) for a in _type_b_numerators(block))
    modulus = 3**block - 1
    nums = _exact_period_numerators(block)
    if block % 2 == 0:
        half = block // 2
        is_b = (nums * (3**half - 1) - modulus // 2) % modulus == 0
        nums = nums[~is_b]
    return sorted(Fraction(int(a), modulus) for a in nums)


def preperiod1_points(block: int, ptype: str) -> list[Angle]:
    """All preperiod-1 angles whose image is periodic of the given type and block period.

    For each periodic point y of that class, the two preimages of y not
    on the cycle are collected (the third preimage is y's cycle
    predecessor).
    """
    if block < 1:
        raise ValueError("block period must be positive")
    if ptype not in ("B", "D"):
        raise ValueError(f"type must be 'B' or 'D', got {ptype!r}")
    period = 2 * block if ptype == "B" else block
    out: list[Angle] = []
    for y in _block_points(block, ptype):
        pred = y
        for _ in range(period - 1):
            pred = tripling(pred)
        third = Fraction(1, 3)
        base = y / 3
        for j in range(3):
            x = (base + j * third) % 1
            if x != pred:
                out.append(x)
    out.sort()
    return out


def chord_orbit(ch: Chord, max_steps: int) -> ChordOrbit:
    """Full eventually periodic orbit of a chord under the tripling map.

    Tracks the ordered endpoint pair, so the pointwise period is found
    directly; the setwise period is the first recurrence of the chord as
    an unordered pair (it divides the pointwise period, and the two
    preperiods coincide).  Exceeding max_steps before closure is an
    error; it cannot happen for rational input with an adequate bound.
    """
    pair = (ch.a, ch.b)
    seen: dict[tuple[Angle, Angle], int] = {}
    pairs: list[tuple[Angle, Angle]] = []
    while pair not in seen:
        if len(pairs) > max_steps:
            raise RuntimeError(f"chord orbit did not close within {max_steps} steps")
        seen[pair] = len(pairs)
        pairs.append(pair)
        pair = (tripling(pair[0]), tripling(pair[1]))
    first = seen[pair]
    pointwise = len(pairs) - first
    start = Chord(*pairs[first])
    cur, setwise = image(start), 1
    while cur != start:
        cur, setwise = image(cur), setwise + 1
    chords = tuple(Chord(*p) for p in pairs[: first + setwise])
    return ChordOrbit(
        preperiod=first,
        pointwise_period=pointwise,
        setwise_period=setwise,
        chords=chords,
    )
