"""Finite-depth symmetric pullback prelaminations and hyperbolic pruning.

A legal pair {c, -c} seeds a pullback family: a degenerate c starts
from its pair of critical chords, a non-degenerate c from the edges of
its quadrilateral pair together with the finite forward orbits of
+-c.  Each level adds, for every chord of the previous level, the
preimage chords that cross none of the generating barriers (the
critical chords, respectively the quadrilateral edges).

Preimage selection.  The six preimage points of a chord alternate
around the circle, so its preimage chords organize into at most five
non-crossing perfect matchings (the all-short, all-medium and three
mixed patterns of the sibling trichotomy).  Barriers generically leave
exactly one matching alive.  The remaining cases are resolved
deterministically:

* critical parent: candidates longer than 1/3 are dropped (they span
  over the co-critical chord), and endpoint-sharing candidates around a
  periodic endpoint keep the shorter chord (the collapsing
  quadrilateral keeps its short edges);
* several surviving matchings: prefer the one containing the parent
  itself (setwise invariant minors are their own pullback), then the
  shortest length profile, then canonical order;
* no surviving matching: all surviving candidates are returned for the
  caller.

Depth truncation replaces the closure operation: the artifact produces
finite prelaminations only.  Every angle generated at depth d is an
integer multiple of 1/(D * 3^d) for D the least common denominator of
the seed, so the engine runs on int64 numerators at that fixed scale.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .angles import orbit_info
from .chords import Chord, chord_antipode, image, majors_of, quad
from .legality import LegalityVerdict, is_legal_pair
from .orbits import chord_orbit

__all__ = [
    "Prelamination",
    "IllegalSeedError",
    "InvariantError",
    "pullbacks_of_chord",
    "build_prelamination",
    "hyperbolic_prune",
    "short_quad_edges",
]


class IllegalSeedError(ValueError):
    """The seed pair failed the legality oracle."""

    def __init__(self, c: Chord, verdict: LegalityVerdict):
        self.verdict = verdict
        super().__init__(f"seed {c} is not a legal pair: {verdict.to_json()}")


class InvariantError(RuntimeError):
    """The generated chord family violated a structural invariant."""


# Perfect non-crossing matchings of the six alternating preimage points,
# as candidate ids 3*i + j for the pairing (u_i, v_j): the all-short,
# all-medium and three mixed sibling patterns.
_MATCHINGS = (
    (0, 4, 8),
    (2, 3, 7),
    (0, 5, 7),
    (2, 4, 6),
    (1, 3, 8),
)
_MATCH_MASKS = tuple(sum(1 << cid for cid in m) for m in _MATCHINGS)


def _arclen(x: int, y: int, n: int) -> int:
    d = (y - x) % n
    return min(d, n - d)


def _crosses_int(p: tuple[int, int], q: tuple[int, int], n: int) -> bool:
    a1, b1 = p
    a2, b2 = q
    if a1 == b1 or a2 == b2:
        return False
    if a1 in (a2, b2) or b1 in (a2, b2):
        return False
    span = (b1 - a1) % n
    return ((a2 - a1) % n < span) != ((b2 - a1) % n < span)


def _select_pullbacks(parent: tuple[int, int], survivors: dict[int, tuple[int, int]],
                      n: int) -> list[tuple[int, int]]:
    """Resolve the surviving preimage candidates of one parent chord.

    `survivors` maps candidate id (3*i + j) to its canonical int pair.
    Implements the selection rules described in the module docstring.
    """
    a, b = parent
    if _arclen(a, b, n) * 3 == n:
        # critical parent
        keep = [(cid, pr) for cid, pr in survivors.items() if _arclen(*pr, n) * 3 <= n]
        keep.sort(key=lambda item: (_arclen(*item[1], n), item[1]))
        chosen: list[tuple[int, int]] = []
        used: set[int] = set()
        for _, pr in keep:
            if pr[0] in used or pr[1] in used:
                continue
            chosen.append(pr)
            used.update(pr)
        return sorted(chosen)

    viable = [m for m in _MATCHINGS if all(cid in survivors for cid in m)]
    if not viable:
        return sorted(survivors.values())
    if len(viable) > 1:
        parent_pair = tuple(sorted(parent))
        containing = [m for m in viable
                      if any(survivors[cid] == parent_pair for cid in m)]
        pool = containing or viable
        pool = sorted(
            pool,
            key=lambda m: (sorted(_arclen(*survivors[cid], n) for cid in m),
                           sorted(survivors[cid] for cid in m)),
        )
        chosen_m = pool[0]
    else:
        chosen_m = viable[0]
    return sorted(survivors[cid] for cid in chosen_m)


def _survivors_of(parent: tuple[int, int], barriers: list[tuple[int, int]],
                  n: int) -> dict[int, tuple[int, int]]:
    a, b = parent
    third = n // 3
    us = [(a // 3 + k * third) % n for k in range(3)]
    vs = [(b // 3 + k * third) % n for k in range(3)]
    out: dict[int, tuple[int, int]] = {}
    for i in range(3):
        for j in range(3):
            pr = (min(us[i], vs[j]), max(us[i], vs[j]))
            if any(_crosses_int(pr, bar, n) for bar in barriers):
                continue
            out[3 * i + j] = pr
    return out


def pullbacks_of_chord(ch: Chord, barriers: list[Chord]) -> list[Chord]:
    """Preimage chords of ch that cross no barrier, after matching selection.

    For a non-critical chord in general position relative to the
    barriers this is exactly a 3-element sibling collection; critical or
    ambiguous positions yield fewer or (when no full matching survives)
    all surviving candidates.
    """
    if ch.degenerate:
        raise ValueError("a degenerate chord has no preimage chords")
    dens = [3 * ch.a.denominator, 3 * ch.b.denominator]
    for bar in barriers:
        dens += [bar.a.denominator, bar.b.denominator]
    scale = math.lcm(*dens)
    parent = (int(ch.a * scale), int(ch.b * scale))
    bars = [(int(bar.a * scale), int(bar.b * scale)) for bar in barriers if not bar.degenerate]
    surv = _survivors_of(parent, bars, scale)
    pairs = _select_pullbacks(parent, surv, scale)
    out = [Chord(Fraction(lo, scale), Fraction(hi, scale)) for lo, hi in pairs]
    return sorted(out, key=Chord.sort_key)


def _quad_edges(c: Chord) -> list[Chord]:
    verts = quad(c)
    return [Chord(verts[i], verts[(i + 1) % len(verts)]) for i in range(len(verts))]


def short_quad_edges(c: Chord) -> list[Chord]:
    """The two edges of the quadrilateral of c other than the major pair, plus antipodes."""
    big, small = majors_of(c)
    edges = [e for e in _quad_edges(c) if e not in (big, small)]
    out = list(edges)
    for e in edges:
        anti = chord_antipode(e)
        if anti not in out:
            out.append(anti)
    return out


def _seed_system(c: Chord) -> tuple[list[Chord], list[Chord]]:
    """Seed chords and pullback barriers for the pullback family of c."""
    if c.degenerate:
        crit, _ = majors_of(c)
        barriers = [crit, chord_antipode(crit)]
        return list(barriers), list(barriers)
    verdict = is_legal_pair(c)
    if not verdict.is_legal:
        raise IllegalSeedError(c, verdict)
    barriers: list[Chord] = []
    for e in _quad_edges(c) + [chord_antipode(e) for e in _quad_edges(c)]:
        if e not in barriers:
            barriers.append(e)
    seeds = list(barriers)
    orbit = chord_orbit(c, max_steps=4 * c.a.denominator * c.b.denominator + 16)
    for ch in orbit.chords:
        for member in (ch, chord_antipode(ch)):
            if not member.degenerate and member not in seeds:
                seeds.append(member)
    return seeds, barriers


@dataclass
class Prelamination:
    """Depth-truncated pullback family, stored as int64 numerators mod `modulus`."""

    seed: Chord
    depth: int
    modulus: int
    pairs: np.ndarray   # (n, 2) canonical lo < hi numerators, sorted by short-arc key
    depths: np.ndarray  # (n,) generation level of first appearance
    barriers: tuple[Chord, ...]
    pruned: bool = False

    def __len__(self) -> int:
        return len(self.pairs)

    def chords(self) -> list[Chord]:
        n = self.modulus
        return [Chord(Fraction(int(lo), n), Fraction(int(hi), n)) for lo, hi in self.pairs]

    def _keys(self) -> np.ndarray:
        return np.sort(self.pairs[:, 0] * self.modulus + self.pairs[:, 1])

    def to_pair(self, ch: Chord) -> tuple[int, int]:
        lo = ch.a * self.modulus
        hi = ch.b * self.modulus
        if lo.denominator != 1 or hi.denominator != 1:
            raise ValueError(f"{ch} is not on the grid of this prelamination")
        return (int(lo), int(hi))

    def contains(self, ch: Chord) -> bool:
        try:
            lo, hi = self.to_pair(ch)
        except ValueError:
            return False  # off the grid: certainly not a member
        key = lo * self.modulus + hi
        keys = self._keys()
        i = int(np.searchsorted(keys, key))
        return i < len(keys) and keys[i] == key

    # -- structural invariants ------------------------------------------------

    def noncrossing(self) -> bool:
        order = np.lexsort((-self.pairs[:, 1], self.pairs[:, 0]))
        stack: list[int] = []
        for idx in order:
            lo, hi = int(self.pairs[idx, 0]), int(self.pairs[idx, 1])
            while stack and stack[-1] <= lo:
                stack.pop()
            if stack and stack[-1] < hi:
                return False
            stack.append(hi)
        return True

    def antipode_closed(self) -> bool:
        n = self.modulus
        half = n // 2
        x = (self.pairs[:, 0] + half) % n
        y = (self.pairs[:, 1] + half) % n
        keys = np.sort(np.minimum(x, y) * n + np.maximum(x, y))
        return bool(np.array_equal(keys, self._keys()))

    def forward_closed(self) -> bool:
        n = self.modulus
        x = (3 * self.pairs[:, 0]) % n
        y = (3 * self.pairs[:, 1]) % n
        nondeg = x != y
        keys = np.minimum(x, y) * n + np.maximum(x, y)
        present = np.isin(keys[nondeg], self._keys())
        return bool(present.all())

    def sibling_complete(self) -> bool:
        """Every chord at interior depth whose image is non-critical admits a
        full collection of three pairwise disjoint same-image chords."""
        n = self.modulus
        groups: dict[int, list[tuple[int, int]]] = {}
        img_keys = []
        for lo, hi in self.pairs:
            x, y = (3 * int(lo)) % n, (3 * int(hi)) % n
            key = min(x, y) * n + max(x, y)
            img_keys.append(key)
            groups.setdefault(key, []).append((int(lo), int(hi)))
        for (lo, hi), d, key in zip(self.pairs.tolist(), self.depths.tolist(), img_keys):
            if not (1 <= d <= self.depth - 1):
                continue
            if _arclen((3 * lo) % n, (3 * hi) % n, n) * 3 == n:
                continue  # image critical: the third sibling is excluded by construction
            if not _has_disjoint_triple((lo, hi), groups[key], n):
                return False
        return True

    def min_length_law(self) -> bool:
        """No forward image of any chord is shorter than min(its length, the minor's)."""
        n = self.modulus
        if self.seed.degenerate:
            return True  # the minor is a point, so the bound is 0 and the law is vacuous
        minor = image(self.seed)
        minor_len = _arclen(*(int(v * n) for v in minor.endpoints()), n)
        own = np.minimum((self.pairs[:, 1] - self.pairs[:, 0]) % n,
                         (self.pairs[:, 0] - self.pairs[:, 1]) % n)
        bound = np.minimum(own, minor_len)
        x, y = self.pairs[:, 0].copy(), self.pairs[:, 1].copy()
        ok = np.ones(len(self.pairs), dtype=bool)
        for _ in range(self.depth + 40):
            x, y = (3 * x) % n, (3 * y) % n
            ln = np.minimum((y - x) % n, (x - y) % n)
            ok &= ln >= bound
        return bool(ok.all())

    def forward_orbit_hits(self, targets: list[Chord]) -> np.ndarray:
        """Boolean mask of chords whose forward orbit (index >= 0) reaches a target."""
        n = self.modulus
        tkeys = np.array(sorted(min(p) * n + max(p) for p in
                                (self.to_pair(t) for t in targets)), dtype=np.int64)
        x, y = self.pairs[:, 0].copy(), self.pairs[:, 1].copy()
        hit = np.zeros(len(self.pairs), dtype=bool)
        for _ in range(self.depth + 40):
            keys = np.minimum(x, y) * n + np.maximum(x, y)
            hit |= np.isin(keys, tkeys)
            x, y = (3 * x) % n, (3 * y) % n
        return hit

    def to_json(self) -> str:
        from .formats import prelamination_to_json

        return prelamination_to_json(self.seed, self.depth, self.chords())


def _has_disjoint_triple(member: tuple[int, int], group: list[tuple[int, int]],
                         n: int) -> bool:
    others = [g for g in group if g != member]
    for i, g1 in enumerate(others):
        if set(g1) & set(member) or _crosses_int(g1, member, n):
            continue
        for g2 in others[i + 1:]:
            if set(g2) & (set(member) | set(g1)):
                continue
            if _crosses_int(g2, member, n) or _crosses_int(g2, g1, n):
                continue
            return True
    return False


def _level_children(frontier: np.ndarray, barriers: list[tuple[int, int]],
                    n: int) -> np.ndarray:
    """All selected pullback pairs of the frontier chords (with duplicates)."""
    a = frontier[:, 0]
    b = frontier[:, 1]
    third = n // 3
    offs = np.array([0, third, 2 * third], dtype=np.int64)
    us = (a[:, None] // 3 + offs) % n
    vs = (b[:, None] // 3 + offs) % n
    x1 = us[:, [0, 0, 0, 1, 1, 1, 2, 2, 2]]
    x2 = vs[:, [0, 1, 2, 0, 1, 2, 0, 1, 2]]
    crossed = np.zeros(x1.shape, dtype=bool)
    for bs, be in barriers:
        span = (be - bs) % n
        o1 = (x1 - bs) % n
        o2 = (x2 - bs) % n
        in1 = (0 < o1) & (o1 < span)
        in2 = (0 < o2) & (o2 < span)
        shared = (o1 == 0) | (o1 == span) | (o2 == 0) | (o2 == span)
        crossed |= (in1 != in2) & ~shared
    surv = ~crossed
    mask = surv.astype(np.int64) @ (1 << np.arange(9, dtype=np.int64))

    span_p = (b - a) % n
    critical = (span_p == third) | (span_p == 2 * third)
    fast = ~critical & np.isin(mask, np.array(_MATCH_MASKS, dtype=mask.dtype))

    lo = np.minimum(x1, x2)
    hi = np.maximum(x1, x2)
    chunks: list[np.ndarray] = []
    for m, mbits in zip(_MATCHINGS, _MATCH_MASKS):
        sel = fast & (mask == mbits)
        if sel.any():
            ids = list(m)
            chunks.append(np.stack([lo[sel][:, ids].ravel(), hi[sel][:, ids].ravel()], axis=1))

    slow_idx = np.nonzero(~fast)[0]
    slow_pairs: list[tuple[int, int]] = []
    for pi in slow_idx:
        surv_map = {
            cid: (int(lo[pi, cid]), int(hi[pi, cid]))
            for cid in range(9)
            if surv[pi, cid]
        }
        parent = (int(a[pi]), int(b[pi]))
        slow_pairs.extend(_select_pullbacks(parent, surv_map, n))
    if slow_pairs:
        chunks.append(np.array(slow_pairs, dtype=np.int64).reshape(-1, 2))
    if not chunks:
        return np.empty((0, 2), dtype=np.int64)
    return np.concatenate(chunks, axis=0)


def build_prelamination(c: Chord, depth: int) -> Prelamination:
    """The depth-truncated pullback family of a legal pair {c, -c}."""
    if depth < 0:
        raise ValueError("depth must be >= 0")
    seeds, barriers = _seed_system(c)
    dens = [v.denominator for ch in seeds for v in ch.endpoints()]
    scale = math.lcm(*dens)
    n = scale * 3**depth

    seen: dict[int, int] = {}
    ordered: list[tuple[int, int]] = []
    levels: list[int] = []

    def commit(pair: tuple[int, int], level: int) -> bool:
        key = pair[0] * n + pair[1]
        if key in seen:
            return False
        seen[key] = level
        ordered.append(pair)
        levels.append(level)
        return True

    for ch in seeds:
        lo, hi = int(ch.a * n), int(ch.b * n)
        commit((min(lo, hi), max(lo, hi)), 0)
    bars = [(int(ch.a * n), int(ch.b * n)) for ch in barriers]

    frontier = np.array(ordered, dtype=np.int64)
    for level in range(1, depth + 1):
        if len(frontier) == 0:
            break
        children = _level_children(frontier, bars, n)
        fresh = []
        for lo, hi in children.tolist():
            if commit((lo, hi), level):
                fresh.append((lo, hi))
        frontier = np.array(fresh, dtype=np.int64).reshape(-1, 2)

    pairs = np.array(ordered, dtype=np.int64).reshape(-1, 2)
    depths = np.array(levels, dtype=np.int64)
    order = _canonical_order(pairs, n)
    pre = Prelamination(seed=c, depth=depth, modulus=n, pairs=pairs[order],
                        depths=depths[order], barriers=tuple(barriers))
    if not pre.noncrossing():
        raise InvariantError(f"pullback family of {c} produced a crossing")
    return pre


def _canonical_order(pairs: np.ndarray, n: int) -> np.ndarray:
    span = (pairs[:, 1] - pairs[:, 0]) % n
    wrap = span > n - span
    start = np.where(wrap, pairs[:, 1], pairs[:, 0])
    end = np.where(wrap, pairs[:, 0], pairs[:, 1])
    return np.lexsort((end, start))


def hyperbolic_prune(c: Chord, depth: int) -> Prelamination:
    """Remove the short quadrilateral edges of c and their backward orbits.

    Requires a non-degenerate co-periodic seed (the image of c has
    periodic endpoints); the comajor c itself always survives.
    """
    if c.degenerate:
        raise ValueError("hyperbolic pruning needs a non-degenerate comajor")
    minor = image(c)
    if any(orbit_info(v).preperiod != 0 for v in minor.endpoints()):
        raise ValueError(f"{c} is not co-periodic (its image is not periodic)")
    pre = build_prelamination(c, depth)
    hit = pre.forward_orbit_hits(short_quad_edges(c))
    pruned = Prelamination(
        seed=c,
        depth=depth,
        modulus=pre.modulus,
        pairs=pre.pairs[~hit],
        depths=pre.depths[~hit],
        barriers=pre.barriers,
        pruned=True,
    )
    if not pruned.contains(c):
        raise InvariantError(f"comajor {c} did not survive its own pruning")
    return pruned
