"""Step-wise construction of all co-periodic comajor leaves by block period.

Step 1 draws the four block-period-1 leaves.  Each later step takes the
preperiod-1 points of the next block (type B first, then type D against
the enlarged leaf set), partitions them into components cut out by the
already drawn leaves (with the central component further split by the
four sectors the step-1 leaves leave on the circle), and connects the
points of each component consecutively along its boundary arc.  Every
produced chord is short, every point is used exactly once, and the
growing family stays crossing-free and closed under the half-turn;
violations of any of these raise rather than being repaired, since each
is backed by a theorem about the comajor lamination.
"""

from __future__ import annotations

from bisect import bisect_left, bisect_right
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .angles import Angle
from .chords import Chord, SIXTH, image, length
from .legality import is_legal_pair
from .orbits import preperiod1_points

__all__ = [
    "ComajorRecord",
    "BuildState",
    "NestingReport",
    "BuildError",
    "VerificationError",
    "make_record",
    "seed_leaves",
    "group_by_component",
    "pair_consecutively",
    "run_step",
    "build",
    "nesting_audit",
]


class BuildError(RuntimeError):
    """A theorem-backed contract of the construction was violated."""


class VerificationError(RuntimeError):
    """A produced leaf failed the independent legality oracle."""

    def __init__(self, record: "ComajorRecord", verdict):
        self.record = record
        self.verdict = verdict
        super().__init__(f"leaf {record.chord} failed certification: {verdict.to_json()}")


@dataclass(frozen=True, slots=True)
class ComajorRecord:
    """A co-periodic comajor leaf with its classification and provenance."""

    chord: Chord
    ptype: str  # "B" or "D"
    block_period: int
    step: int
    minor: Chord

    def sort_key(self):
        return (self.block_period, self.ptype == "B", self.chord.sort_key())


def make_record(chord: Chord, ptype: str, block: int) -> ComajorRecord:
    return ComajorRecord(chord=chord, ptype=ptype, block_period=block, step=block,
                         minor=image(chord))


@dataclass
class BuildState:
    leaves: list[ComajorRecord] = field(default_factory=list)
    completed_block: int = 0

    def chords(self) -> list[Chord]:
        return [rec.chord for rec in self.leaves]

    def sorted_leaves(self) -> list[ComajorRecord]:
        return sorted(self.leaves, key=ComajorRecord.sort_key)

    def endpoint_set(self) -> set[Angle]:
        pts: set[Angle] = set()
        for rec in self.leaves:
            pts.update(rec.chord.endpoints())
        return pts


@dataclass
class NestingReport:
    checked_blocks: int
    cross_type: list[tuple[ComajorRecord, ComajorRecord]]  # (inner, outer) pairs
    separated_same_type: list[tuple[ComajorRecord, ComajorRecord, ComajorRecord]]
    # (inner, outer, smaller-block separator) triples

    def __str__(self) -> str:
        lines = [f"nesting audit over blocks 1..{self.checked_blocks}: "
                 f"{len(self.cross_type)} cross-type same-block nesting(s), "
                 f"{len(self.separated_same_type)} same-type nesting(s) split by a smaller block"]
        for inner, outer in self.cross_type[:12]:
            lines.append(f"  {inner.ptype} {inner.chord} under {outer.ptype} {outer.chord}")
        if len(self.cross_type) > 12:
            lines.append(f"  ... {len(self.cross_type) - 12} more")
        return "\n".join(lines)


# Step-1 leaves; the four sectors between them bound all later central candidates.
_SEED_DATA = (
    ("D", Fraction(1, 6), Fraction(1, 3)),
    ("D", Fraction(2, 3), Fraction(5, 6)),
    ("B", Fraction(5, 12), Fraction(7, 12)),
    ("B", Fraction(11, 12), Fraction(1, 12)),
)


def seed_leaves() -> list[ComajorRecord]:
    """The four block-period-1 comajor leaves."""
    return [make_record(Chord(a, b), ptype=t, block=1) for t, a, b in _SEED_DATA]


def _sectors() -> list[tuple[Angle, Angle]]:
    """Arcs of the central component left by the step-1 leaves, sorted by start."""
    arcs = sorted(Chord(a, b).arc() for _, a, b in _SEED_DATA)
    out = []
    for i, (_, end) in enumerate(arcs):
        start_next = arcs[(i + 1) % len(arcs)][0]
        out.append((end, start_next))
    return sorted(out)


def group_by_component(points: list[Angle], state: BuildState) -> list[list[Angle]]:
    """Partition candidate points by the component of the disk they lie in.

    Two points share a group iff no existing leaf separates them; the
    under-arcs of the leaves are laminar, so a point's component is
    keyed by the innermost arc containing it.  Within the central
    component (under no leaf), groups are further split by the four
    step-1 sectors.  Points are ordered along their component's boundary
    arc (wrap-aware); groups are ordered by smallest member.  A point
    colliding with an existing endpoint signals an enumeration bug.
    """
    taken = state.endpoint_set()
    # common integer scale for the step: all comparisons become int ops
    dens = [p.denominator for p in points]
    for rec in state.leaves:
        dens.append(rec.chord.a.denominator)
        dens.append(rec.chord.b.denominator)
    scale = _lcm_all(dens)

    entries = []  # (start, span, leaf index), wrap arcs duplicated at start - scale
    max_span = 0
    for idx, rec in enumerate(state.leaves):
        s, e = rec.chord.arc()
        s_i = int(s * scale)
        span = int(((e - s) % 1) * scale)
        max_span = max(max_span, span)
        entries.append((s_i, span, idx))
        if s_i + span >= scale:
            entries.append((s_i - scale, span, idx))
    entries.sort()
    starts = [e[0] for e in entries]
    sectors = [(int(s * scale), int(((e - s) % 1) * scale)) for s, e in _sectors()]

    buckets: dict[tuple, list[tuple[int, Angle]]] = {}
    for p in points:
        if p in taken:
            raise BuildError(f"candidate point {p} collides with an existing leaf endpoint")
        p_i = int(p * scale)
        innermost: Optional[tuple[int, int, int]] = None  # (span, leaf index, offset)
        lo = bisect_left(starts, p_i - max_span)
        hi = bisect_right(starts, p_i)
        for s_i, span, idx in entries[lo:hi]:
            off = p_i - s_i
            if 0 < off < span and (innermost is None or span < innermost[0]):
                innermost = (span, idx, off)
        if innermost is not None:
            key = ("leaf", innermost[1])
            pos = innermost[2]
        else:
            sector = None
            for i, (s_i, span) in enumerate(sectors):
                off = (p_i - s_i) % scale
                if 0 < off < span:
                    sector = (i, off)
                    break
            if sector is None:
                raise BuildError(f"central point {p} lies in no sector")
            key = ("sector", sector[0])
            pos = sector[1]
        buckets.setdefault(key, []).append((pos, p))

    groups = []
    for members in buckets.values():
        members.sort()
        groups.append([p for _, p in members])
    groups.sort(key=lambda g: min(g))
    return groups


def _lcm_all(values: list[int]) -> int:
    from math import lcm

    return lcm(*values)


def pair_consecutively(group: list[Angle]) -> list[Chord]:
    """Pair (1st,2nd), (3rd,4th), ... of a boundary-ordered point group.

    Odd group size and chords longer than 1/6 are hard errors (both
    contradict theorems about co-periodic comajors).
    """
    if len(group) % 2 != 0:
        raise BuildError(f"component holds an odd number of candidate points: {group}")
    out = []
    for i in range(0, len(group), 2):
        ch = Chord(group[i], group[i + 1])
        if length(ch) > SIXTH:
            raise BuildError(f"consecutive pairing produced an over-long chord {ch}")
        out.append(ch)
    return out


def _commit(state: BuildState, block: int, ptype: str) -> None:
    points = preperiod1_points(block, ptype)
    new: list[Chord] = []
    for group in group_by_component(points, state):
        new.extend(pair_consecutively(group))
    # one laminarity sweep replaces pairwise crossing checks; any crossing
    # between a new leaf and the family is a hard error
    offender = _crossing_pair(state.chords() + new)
    if offender is not None:
        raise BuildError(f"leaf {offender[0]} crosses leaf {offender[1]}")
    for ch in new:
        state.leaves.append(make_record(ch, ptype=ptype, block=block))


def _crossing_pair(chords: list[Chord]) -> Optional[tuple[Chord, Chord]]:
    """First crossing pair in a chord family, or None (stack sweep, O(n log n)).

    Chords may share endpoints; two chords cross iff their (min, max)
    endpoint intervals partially overlap with all four inequalities
    strict.
    """
    items = sorted(chords, key=lambda c: (c.a, -c.b))
    stack: list[Chord] = []
    for ch in items:
        while stack and stack[-1].b <= ch.a:
            stack.pop()
        if stack and stack[-1].b < ch.b:
            return (stack[-1], ch)
        stack.append(ch)
    return None


def run_step(state: BuildState, block: int) -> BuildState:
    """Add all block-`block` leaves: type B first, then type D against the enlarged set."""
    if state.completed_block != block - 1:
        raise ValueError(f"state completed block {state.completed_block}, expected {block - 1}")
    _commit(state, block, "B")
    _commit(state, block, "D")
    state.completed_block = block
    return state


def build(max_block: int, verify: bool = False) -> BuildState:
    """Seed plus steps 2..max_block; with verify, certify every leaf with the oracle."""
    if max_block < 1:
        raise ValueError("max_block must be >= 1")
    state = BuildState(leaves=seed_leaves(), completed_block=1)
    for block in range(2, max_block + 1):
        run_step(state, block)
    if verify:
        _verify(state)
    return state


def _verify(state: BuildState) -> None:
    used: set[Angle] = set()
    for rec in state.leaves:
        verdict = is_legal_pair(rec.chord)
        if not verdict.is_legal:
            raise VerificationError(rec, verdict)
        used.update(rec.chord.endpoints())
    expected: set[Angle] = set()
    for block in range(1, state.completed_block + 1):
        for t in ("B", "D"):
            expected.update(preperiod1_points(block, t))
    if used != expected:
        raise BuildError("endpoint usage does not cover each candidate point exactly once")


def nesting_audit(state: BuildState) -> NestingReport:
    """Audit equal-block nestings against the block-period structure theorem.

    For every nested pair of leaves of the same block period, a leaf of
    strictly smaller block period must lie between them (it is what put
    the inner leaf in its own component when the pair was drawn).  For a
    same-type pair a missing separator is a hard error; cross-type pairs
    are reported, the separated same-type ones listed with their
    separator.
    """
    scale = _lcm_all([v.denominator for rec in state.leaves
                      for v in rec.chord.endpoints()] or [1])
    arcs = []  # (start, span) on the common integer scale, aligned with leaves
    for rec in state.leaves:
        s, e = rec.chord.arc()
        arcs.append((int(s * scale), int(((e - s) % 1) * scale)))

    def nested(i: int, j: int) -> bool:
        si, wi = arcs[i]
        sj, wj = arcs[j]
        return (si - sj) % scale + wi <= wj

    # innermost enclosing leaf of strictly smaller block, per leaf
    ancestor: list[Optional[int]] = [None] * len(arcs)
    for i, rec in enumerate(state.leaves):
        best = None
        for j, other in enumerate(state.leaves):
            if other.block_period >= rec.block_period:
                continue
            if nested(i, j) and (best is None or arcs[j][1] < arcs[best][1]):
                best = j
        ancestor[i] = best

    by_block: dict[int, list[int]] = {}
    for i, rec in enumerate(state.leaves):
        by_block.setdefault(rec.block_period, []).append(i)
    cross = []
    separated = []
    leaves = state.leaves
    for block, idxs in sorted(by_block.items()):
        for a_pos, i in enumerate(idxs):
            for j in idxs[a_pos + 1:]:
                if nested(i, j):
                    inner, outer = i, j
                elif nested(j, i):
                    inner, outer = j, i
                else:
                    continue
                if leaves[inner].ptype != leaves[outer].ptype:
                    cross.append((leaves[inner], leaves[outer]))
                    continue
                sep = ancestor[inner]
                if sep is None or not nested(sep, outer):
                    raise BuildError(
                        f"same-type block-{block} leaves nested with no smaller-block leaf "
                        f"between them: {leaves[inner].chord} under {leaves[outer].chord}"
                    )
                separated.append((leaves[inner], leaves[outer], leaves[sep]))
    return NestingReport(checked_blocks=state.completed_block, cross_type=cross,
                         separated_same_type=separated)
