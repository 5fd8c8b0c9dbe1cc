"""Legality oracle for symmetric chord pairs.

A symmetric pair {c, -c} is legal when it is degenerate, or when
(a) no two iterated forward images of c and -c cross, and
(b) no forward image of c meets the interior of the short strips of c.
Legal pairs are exactly the comajor pairs, so this module is the
independent certifier for everything the builder produces.

The short strips of a chord c of length <= 1/6 form the region bounded
by its major pair (M, M') together with the antipodal copy.  A chord
meets the open strip region iff it crosses one of the four bounding
chords or has an endpoint strictly inside one of the four boundary
arcs; chords equal to a bounding chord or touching only strip vertices
stay outside.

Condition (a) is checked over all pairs drawn from the union of both
full orbits (indices >= 0, the most conservative reading); condition
(b) over images with index >= 1.  Orbits are finite and computed to
exact closure, so the verdict is exact.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .angles import Angle, THIRD, antipode, in_open_arc, orbit_info
from .chords import (
    Chord,
    SIXTH,
    chord_antipode,
    crosses,
    image,
    length,
    majors_of,
)

__all__ = [
    "StripSystem",
    "LegalityWitness",
    "LegalityVerdict",
    "strip_system",
    "strips_of",
    "hits_strip_interior",
    "is_legal_pair",
    "is_comajor",
]


@dataclass(frozen=True, slots=True)
class StripSystem:
    """Short strips of a chord: bounded by M, M' and their antipodes."""

    M: Chord
    Mp: Chord
    width: Fraction
    arcs: tuple[tuple[Angle, Angle], ...]  # four open boundary arcs (two per strip)

    def bounding_chords(self) -> tuple[Chord, ...]:
        out = []
        for ch in (self.M, self.Mp, chord_antipode(self.M), chord_antipode(self.Mp)):
            if ch not in out:
                out.append(ch)
        return tuple(out)


@dataclass(frozen=True, slots=True)
class LegalityWitness:
    kind: str  # "crossing" or "strip"
    first_index: int
    first_of: str  # "c" or "-c"
    first: Chord
    second_index: Optional[int]
    second_of: Optional[str]
    second: Chord  # crossing partner, strip boundary chord, or violated arc as a chord

    def to_json(self) -> dict:
        from .formats import chord_to_json

        if self.kind == "crossing":
            return {
                "kind": "crossing",
                "first": {"image_index": self.first_index, "of": self.first_of,
                          "chord": chord_to_json(self.first)},
                "second": {"image_index": self.second_index, "of": self.second_of,
                           "chord": chord_to_json(self.second)},
            }
        return {
            "kind": "strip",
            "image_index": self.first_index,
            "image": chord_to_json(self.first),
            "boundary": chord_to_json(self.second),
        }


@dataclass(frozen=True, slots=True)
class LegalityVerdict:
    status: str  # "legal" or "illegal"
    witness: Optional[LegalityWitness] = None

    @property
    def is_legal(self) -> bool:
        return self.status == "legal"

    def to_json(self) -> dict:
        doc: dict = {"status": self.status}
        if self.witness is not None:
            doc["witness"] = self.witness.to_json()
        return doc


def strip_system(first: Chord, second: Chord) -> StripSystem:
    """The strip pair bounded by two disjoint chords with a common image.

    The strip between them meets the circle in the two arcs joining an
    endpoint of one to an endpoint of the other; the antipodal strip
    contributes the antipodal arcs.
    """
    width = abs(THIRD - length(first))
    if first == second:
        return StripSystem(M=first, Mp=second, width=width, arcs=())
    verts = sorted(set(first.endpoints()) | set(second.endpoints()))
    owner = [v in first.endpoints() for v in verts]
    arcs = []
    n = len(verts)
    for i in range(n):
        j = (i + 1) % n
        if owner[i] != owner[j]:  # arc between endpoints of different chords
            arcs.append((verts[i], verts[j]))
    full = tuple(arcs) + tuple((antipode(a), antipode(b)) for a, b in arcs)
    return StripSystem(M=first, Mp=second, width=width, arcs=full)


def strips_of(c: Chord) -> StripSystem:
    """The short strips of a chord of length <= 1/6 (or a degenerate chord).

    Realized as the strip between the major pair M, M' plus its
    antipodal copy; the two boundary arcs per strip have length
    |1/3 - |M|| = |c|.  A degenerate c yields the critical chord twice
    with width 0 and no arcs.
    """
    big, small = majors_of(c)  # rejects length > 1/6
    return strip_system(big, small)


def hits_strip_interior(d: Chord, c: Chord) -> bool:
    """True iff d meets the open strip region of c.

    A chord meets the open region iff it crosses one of the four
    bounding chords, has an endpoint strictly inside one of the four
    boundary arcs, or lies inside the closed arc system of a single
    strip (quadrilateral short edges and corner-to-corner diagonals run
    through the open region).  Bounding chords themselves and chords
    that touch a strip vertex but leave the strips return false.
    """
    return _hits(d, strips_of(c))


def _in_closed_arc(x: Angle, s: Angle, e: Angle) -> bool:
    return x == s or x == e or in_open_arc(x, s, e)


def _strip_violation(d: Chord, strips: StripSystem) -> Optional[Chord]:
    """The boundary object d violates, or None when d avoids the open strips."""
    bounds = strips.bounding_chords()
    for bound in bounds:
        if crosses(d, bound):
            return bound
    for s, e in strips.arcs:
        if in_open_arc(d.a, s, e) or in_open_arc(d.b, s, e):
            return Chord(s, e)
    if strips.arcs and d not in bounds:
        # both endpoints on the closed circle part of one strip: d stays
        # between that strip's bounding chords and meets its interior
        for half, marker in ((strips.arcs[:2], strips.M),
                             (strips.arcs[2:], chord_antipode(strips.M))):
            if all(any(_in_closed_arc(v, s, e) for s, e in half) for v in d.endpoints()):
                return marker
    return None


def _hits(d: Chord, strips: StripSystem) -> bool:
    return _strip_violation(d, strips) is not None


def _full_orbit(c: Chord) -> list[Chord]:
    """Images of c to exact closure: preperiod plus one full pointwise period."""
    info_a = orbit_info(c.a)
    info_b = orbit_info(c.b)
    pre = max(info_a.preperiod, info_b.preperiod)
    steps = pre + math.lcm(info_a.period, info_b.period)
    out = [c]
    cur = c
    for _ in range(steps):
        cur = image(cur)
        out.append(cur)
    return out


def is_legal_pair(c: Chord) -> LegalityVerdict:
    """Decide legality of the symmetric pair {c, -c}; exact, with witness when illegal.

    Accepts degenerate chords and chords of length <= 1/6 (callers
    pre-filter); longer chords are rejected.
    """
    if c.degenerate:
        return LegalityVerdict("legal")
    if length(c) > SIXTH:
        raise ValueError(f"legality is decided for chords of length <= 1/6, got {length(c)}")

    orbit = _full_orbit(c)
    mirror = [chord_antipode(ch) for ch in orbit]
    tagged = [(i, "c", ch) for i, ch in enumerate(orbit)]
    tagged += [(i, "-c", ch) for i, ch in enumerate(mirror)]

    # (a) no two iterated forward images of c and -c cross
    for k in range(len(tagged)):
        i, oi, ci = tagged[k]
        for j, oj, cj in tagged[k + 1:]:
            if crosses(ci, cj):
                return LegalityVerdict(
                    "illegal",
                    LegalityWitness("crossing", i, oi, ci, j, oj, cj),
                )

    # (b) no forward image of c crosses the interior of the short strips
    strips = strips_of(c)
    for i, ch in enumerate(orbit[1:], start=1):
        violated = _strip_violation(ch, strips)
        if violated is not None:
            return LegalityVerdict(
                "illegal",
                LegalityWitness("strip", i, "c", ch, None, None, violated),
            )
    return LegalityVerdict("legal")


def is_comajor(c: Chord) -> bool:
    """A symmetric pair is a comajor pair iff it is legal."""
    return is_legal_pair(c).is_legal
