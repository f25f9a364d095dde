"""Realizability of straight words as classical knot diagrams.

Two independent routes are provided:

* the cross-ratio containment check and the marker-augmentation search over
  uncontained-arc placements (the production path), and
* a planarity oracle over a crossing-gadget graph (the test oracle).

A word passes the contained check when no two same-side semicircles of its
straight diagram intersect; intersections are detected by the sign of a cross
ratio, computed exactly over the rationals.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Union

import networkx as nx

from .words import AugmentedWord, Coordinate, StraightWord, to_knot_word


class DegenerateIntervalError(ValueError):
    """Cross ratio requested for intervals sharing an endpoint."""


class Side(enum.Enum):
    TOP = "top"
    BOTTOM = "bottom"

    def flipped(self) -> "Side":
        return Side.BOTTOM if self is Side.TOP else Side.TOP


@dataclass(frozen=True)
class Interval:
    """A semicircle footprint on the extended axis, with its half-plane side."""

    a: Coordinate
    b: Coordinate
    side: Side

    def __post_init__(self) -> None:
        if self.a == self.b:
            raise DegenerateIntervalError(f"interval endpoints coincide: {self.a}")

    @property
    def lo(self) -> Coordinate:
        return min(self.a, self.b)

    @property
    def hi(self) -> Coordinate:
        return max(self.a, self.b)


@dataclass(frozen=True)
class SemicircleSets:
    """Top and bottom semicircle families of a straight diagram."""

    top: tuple[Interval, ...]
    bottom: tuple[Interval, ...]

    def __post_init__(self) -> None:
        if any(iv.side is not Side.TOP for iv in self.top):
            raise ValueError("top set contains a bottom interval")
        if any(iv.side is not Side.BOTTOM for iv in self.bottom):
            raise ValueError("bottom set contains a top interval")

    @property
    def count(self) -> int:
        return len(self.top) + len(self.bottom)


def _token_coords(w: Union[StraightWord, AugmentedWord]) -> tuple[int, list[Coordinate]]:
    if isinstance(w, AugmentedWord):
        return w.word.n, list(w.entries)
    return w.n, list(w.perm)


def semicircles(w: Union[StraightWord, AugmentedWord]) -> SemicircleSets:
    """Build the alternating semicircle families of a word's straight diagram.

    The semicircular strand starts at the right end of the straight strand
    (coordinate n+1), visits each token coordinate in order, and finishes at
    the left end (coordinate 0).  Consecutive coordinates bound one semicircle;
    sides strictly alternate starting above the strand.
    """
    n, tokens = _token_coords(w)
    coords: list[Coordinate] = [n + 1] + tokens + [0]
    top: list[Interval] = []
    bottom: list[Interval] = []
    for i in range(len(coords) - 1):
        side = Side.TOP if i % 2 == 0 else Side.BOTTOM
        iv = Interval(coords[i], coords[i + 1], side)
        (top if side is Side.TOP else bottom).append(iv)
    sets = SemicircleSets(tuple(top), tuple(bottom))
    assert sets.count == len(tokens) + 1
    return sets


def cross_ratio(p: Interval, q: Interval) -> Fraction:
    """Exact cross ratio of two interval endpoint pairs.

    Negative exactly when the semicircles drawn on the same side intersect.
    """
    x1, x2, x3, x4 = p.a, p.b, q.a, q.b
    values = [Fraction(v) for v in (x1, x2, x3, x4)]
    if len(set(values)) != 4:
        raise DegenerateIntervalError(
            f"cross ratio undefined for shared endpoints: {p} vs {q}"
        )
    v1, v2, v3, v4 = values
    return ((v3 - v1) * (v4 - v2)) / ((v3 - v2) * (v4 - v1))


def intervals_intersect(p: Interval, q: Interval) -> bool:
    """Comparison form of the cross-ratio sign test: interleaved endpoints."""
    return (p.lo < q.lo < p.hi) != (p.lo < q.hi < p.hi)


@dataclass(frozen=True)
class CheckResult:
    contained: bool
    evaluations: int
    first_crossing_pair: Optional[tuple[Interval, Interval]] = None

    def __bool__(self) -> bool:
        return self.contained


def contained_check(s: SemicircleSets, exhaustive: bool = False) -> CheckResult:
    """Check every same-side pair for intersection via the cross ratio.

    Early exit on the first negative pair is the default; ``exhaustive`` runs
    all pairs so the evaluation counter can be compared against the quadratic
    operation-count formula.
    """
    evaluations = 0
    bad: Optional[tuple[Interval, Interval]] = None
    for family in (s.top, s.bottom):
        for p, q in itertools.combinations(family, 2):
            evaluations += 1
            if cross_ratio(p, q) < 0:
                if bad is None:
                    bad = (p, q)
                if not exhaustive:
                    return CheckResult(False, evaluations, bad)
    return CheckResult(bad is None, evaluations, bad)


def expected_evaluations(n: int) -> int:
    """Number of cross-ratio evaluations for a length-n word: floor(n^2 / 4)."""
    t = (n + 2) // 2  # ceil((n+1)/2) semicircles on top
    b = (n + 1) // 2
    return t * (t - 1) // 2 + b * (b - 1) // 2


def is_contained_realizable(w: Union[StraightWord, AugmentedWord]) -> bool:
    """True iff the word is realizable with no arcs crossing the extension."""
    n, tokens = _token_coords(w)
    return _contained_fast(tokens, n)


def _contained_fast(tokens: Sequence[Coordinate], n: int) -> bool:
    """Early-exit pairwise interleaving check over both semicircle families."""
    coords = [n + 1] + list(tokens) + [0]
    top: list[tuple[Coordinate, Coordinate]] = []
    bottom: list[tuple[Coordinate, Coordinate]] = []
    for i in range(len(coords) - 1):
        a, b = coords[i], coords[i + 1]
        lo, hi = (a, b) if a < b else (b, a)
        family = top if i % 2 == 0 else bottom
        for lo2, hi2 in family:
            if (lo < lo2 < hi) != (lo < hi2 < hi):
                return False
        family.append((lo, hi))
    return True


def passes_parity(w: StraightWord) -> bool:
    """Necessary evenness condition on the knot word's chord interleavings.

    For each crossing the subword strictly between its two occurrences must
    have even length; words failing this are realizable only virtually.
    """
    n = w.n
    for j, k in enumerate(w.perm, start=1):
        if (n + j + k) % 2 == 0:
            return False
    return True


def is_realizable(w: StraightWord, max_markers: Optional[int] = None) -> Optional[AugmentedWord]:
    """Search marker augmentations for a placement passing the contained check.

    Tries marker counts 0..max(0, n-3) in increasing order, gap subsets in
    lexicographic order, and marker depth orders deterministically, so the
    returned witness is stable.  Absent means the word is realizable only as a
    virtual knot.
    """
    n = w.n
    kmax = max(0, n - 3)
    if max_markers is not None:
        kmax = min(kmax, max_markers)
    if not passes_parity(w):
        return None
    if _contained_fast(list(w.perm), n):
        return AugmentedWord(tuple(w.perm))
    for k in range(1, kmax + 1):
        found = _search_with_k_markers(w, k)
        if found is not None:
            return found
    return None


def _search_with_k_markers(w: StraightWord, k: int) -> Optional[AugmentedWord]:
    """Backtracking placement of exactly k markers, one per gap, all orders.

    Marker coordinates are dyadic insertions left of zero; only their relative
    order matters, and insertion never disturbs the order of placed markers,
    so completed interval checks stay valid as the search deepens.
    """
    n = w.n
    perm = w.perm
    top: list[tuple[float, float]] = []
    bottom: list[tuple[float, float]] = []
    markers: list[float] = []  # descending: markers[0] is closest to zero
    gap_choice: list[tuple[int, float]] = []

    def add(a: Coordinate, b: Coordinate, side: int) -> bool:
        lo, hi = (a, b) if a < b else (b, a)
        family = top if side == 0 else bottom
        for lo2, hi2 in family:
            if (lo < lo2 < hi) != (lo < hi2 < hi):
                return False
        family.append((lo, hi))
        return True

    def pop(side: int) -> None:
        (top if side == 0 else bottom).pop()

    def slot_coord(slot: int) -> float:
        if not markers:
            return -1.0
        if slot == 0:
            return markers[0] / 2.0
        if slot == len(markers):
            return markers[-1] - 1.0
        return (markers[slot - 1] + markers[slot]) / 2.0

    def rec(i: int, prev: Coordinate, side: int, used: int) -> bool:
        # Gap i sits before token i; gap n is followed only by the return to 0.
        take_feasible = used < k and (n + 1 - i) >= (k - used)
        if take_feasible:
            for slot in range(len(markers) + 1):
                c = slot_coord(slot)
                if add(prev, c, side):
                    markers.insert(slot, c)
                    gap_choice.append((i, c))
                    if _after_gap(i, c, 1 - side, used + 1):
                        return True
                    gap_choice.pop()
                    markers.pop(slot)
                    pop(side)
        skip_feasible = (n - i) >= (k - used)
        if skip_feasible and _after_gap(i, prev, side, used):
            return True
        return False

    def _after_gap(i: int, prev: Coordinate, side: int, used: int) -> bool:
        if i == n:
            if used != k:
                return False
            if add(prev, 0, side):
                if len(top) + len(bottom) == n + k + 1:
                    return True
                pop(side)
            return False
        v = perm[i]
        if add(prev, v, side):
            if rec(i + 1, v, 1 - side, used):
                return True
            pop(side)
        return False

    if rec(0, n + 1, 0, 0):
        order = sorted(markers, reverse=True)
        rank = {c: -(idx + 1) for idx, c in enumerate(order)}
        by_gap = dict(gap_choice)
        entries: list[Coordinate] = []
        for i in range(n + 1):
            if i in by_gap:
                entries.append(rank[by_gap[i]])
            if i < n:
                entries.append(perm[i])
        return AugmentedWord(tuple(entries))
    return None


# ---------------------------------------------------------------------------
# Planarity oracle over a crossing-gadget graph
# ---------------------------------------------------------------------------

_IN1, _IN2, _OUT1, _OUT2 = 0, 1, 2, 3


def _gadget_graph(seq: Sequence[int]) -> tuple[nx.Graph, dict]:
    """Wheel gadget per crossing; rim order forces transversal strands.

    The rim cycle is (first-in, second-in, first-out, second-out), putting the
    two passages of each crossing on opposite rim pairs; the hub makes the
    wheel 3-connected so any planar embedding respects that cyclic order.
    Returns the graph and a map from (position) to its in/out rim nodes.
    """
    m = len(seq)
    first_pos: dict[int, int] = {}
    visit: list[int] = []
    for p, c in enumerate(seq):
        if c in first_pos:
            visit.append(2)
        else:
            first_pos[c] = p
            visit.append(1)
    g = nx.Graph()
    for c in set(seq):
        hub = ("h", c)
        rim = [("r", c, t) for t in range(4)]
        for t in range(4):
            g.add_edge(rim[t], rim[(t + 1) % 4])
            g.add_edge(hub, rim[t])
    ends = {}
    for p, c in enumerate(seq):
        t_in = _IN1 if visit[p] == 1 else _IN2
        t_out = _OUT1 if visit[p] == 1 else _OUT2
        ends[p] = (("r", c, t_in), ("r", c, t_out))
    for p in range(m):
        q = (p + 1) % m
        g.add_edge(ends[p][1], ends[q][0], arc=p)
    return g, ends


def gauss_sequence_realizable(seq: Sequence[int]) -> bool:
    """Planarity of the gadget graph of a double-occurrence sequence."""
    g, _ = _gadget_graph(seq)
    ok, _ = nx.check_planarity(g, counterexample=False)
    return ok


def oracle_realizable(w: StraightWord) -> bool:
    """Independent realizability test: gadget-graph planarity of the knot word."""
    return gauss_sequence_realizable(to_knot_word(w).entries)


def planar_rotations(seq: Sequence[int]) -> Optional[dict[int, list[tuple[str, int]]]]:
    """Embed the curve and report each crossing's edge-end rotation.

    Edge ends are ("in"|"out", position); edge labels follow from positions.
    Returns None when the sequence is not realizable.  The global orientation
    of the embedding is arbitrary, so results are defined up to mirror image.
    """
    g, ends = _gadget_graph(seq)
    ok, emb = nx.check_planarity(g, counterexample=False)
    if not ok:
        return None
    rotations: dict[int, list[tuple[str, int]]] = {}
    rim_role: dict[tuple, tuple[str, int]] = {}
    for p, (r_in, r_out) in ends.items():
        rim_role[r_in] = ("in", p)
        rim_role[r_out] = ("out", p)
    for c in set(seq):
        hub = ("h", c)
        order = _rotation_order(emb, hub)
        rotations[c] = [rim_role[r] for r in order]
    return rotations


def _rotation_order(emb: "nx.PlanarEmbedding", node) -> list:
    first = next(iter(emb[node]))
    order = [first]
    nxt = emb[node][first]["cw"]
    while nxt != first:
        order.append(nxt)
        nxt = emb[node][nxt]["cw"]
    return order
