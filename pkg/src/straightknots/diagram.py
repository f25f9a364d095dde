"""Geometric straight diagrams: layout, PD codes, containment transform, SVG.

A straight diagram places crossings 1..n on a horizontal axis; the rest of
the knot is a chain of semicircles centered on the axis, alternating between
the upper and lower half planes.  Uncontained arcs consist of two semicircles
joined where the arc crosses the extended axis left of the diagram.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional, Sequence, Union

from .realize import (
    CheckResult,
    Side,
    contained_check,
    is_contained_realizable,
    semicircles,
)
from .words import (
    AugmentedWord,
    Coordinate,
    Sign,
    SignedStraightWord,
    StraightWord,
)


class NotRealizableError(ValueError):
    """Layout requested for a word placement with intersecting semicircles."""


class InvariantViolation(RuntimeError):
    """A structural guarantee of the construction failed; always a bug signal."""


@dataclass(frozen=True)
class Semicircle:
    a: Coordinate
    b: Coordinate
    side: Side
    uncontained: bool = False

    @property
    def lo(self) -> Coordinate:
        return min(self.a, self.b)

    @property
    def hi(self) -> Coordinate:
        return max(self.a, self.b)

    @property
    def radius(self) -> float:
        return (float(self.hi) - float(self.lo)) / 2.0

    @property
    def center(self) -> float:
        return (float(self.hi) + float(self.lo)) / 2.0


@dataclass(frozen=True)
class StraightDiagram:
    """Immutable geometric layout of a signed, augmented straight word."""

    word: SignedStraightWord
    augmentation: AugmentedWord
    arcs: tuple[Semicircle, ...]

    def __post_init__(self) -> None:
        # Structural counts: with u uncontained arcs and c contained arcs the
        # diagram has c + 2u semicircles and c + u - 1 crossings.
        n, u, c = self.n, self.u, self.c
        if len(self.arcs) != c + 2 * u:
            raise InvariantViolation(
                f"expected {c + 2 * u} semicircles (c={c}, u={u}), got {len(self.arcs)}"
            )
        if n != c + u - 1:
            raise InvariantViolation(f"crossing count {n} != c + u - 1 = {c + u - 1}")
        if sum(1 for s in self.arcs if s.uncontained) != 2 * u:
            raise InvariantViolation("uncontained semicircle flags inconsistent with markers")

    @property
    def n(self) -> int:
        return self.word.n

    @property
    def u(self) -> int:
        return self.augmentation.marker_count

    @property
    def c(self) -> int:
        return self.n + 1 - self.u

    @property
    def crossing_coords(self) -> tuple[int, ...]:
        return tuple(range(1, self.n + 1))

    @property
    def marker_coords(self) -> tuple[Coordinate, ...]:
        return self.augmentation.markers

    def sign_at(self, label: int) -> Sign:
        return self.word.sign_at_crossing(label)


@dataclass(frozen=True)
class PDCode:
    """Planar diagram code: one (a, b, c, d) per crossing, counterclockwise
    from the incoming under-edge; edge labels 1..2n along the traversal."""

    crossings: tuple[tuple[int, int, int, int], ...]

    def __post_init__(self) -> None:
        counts: dict[int, int] = {}
        for tup in self.crossings:
            for e in tup:
                counts[e] = counts.get(e, 0) + 1
        n = len(self.crossings)
        expected = set(range(1, 2 * n + 1))
        if n and (set(counts) != expected or any(v != 2 for v in counts.values())):
            raise ValueError(f"edge labels must be 1..{2*n} each twice, got {counts}")

    @property
    def n(self) -> int:
        return len(self.crossings)


def layout(w: SignedStraightWord, aug: Optional[AugmentedWord] = None) -> StraightDiagram:
    """Build the geometric diagram for a signed word and its augmentation.

    The augmentation must carry the same crossing tokens as the word and must
    pass the contained check once markers are treated as axis points; a failing
    placement is rejected with the first intersecting pair reported.
    """
    if aug is None:
        aug = AugmentedWord(tuple(w.word.perm))
    if aug.word != w.word:
        raise NotRealizableError(
            f"augmentation tokens {aug.word.perm} do not match word {w.word.perm}"
        )
    sets = semicircles(aug)
    res: CheckResult = contained_check(sets)
    if not res.contained:
        p, q = res.first_crossing_pair
        raise NotRealizableError(
            f"semicircles [{p.a},{p.b}] and [{q.a},{q.b}] on {p.side.value} intersect"
        )
    n = w.n
    coords: list[Coordinate] = [n + 1] + list(aug.entries) + [0]
    arcs: list[Semicircle] = []
    for i in range(len(coords) - 1):
        a, b = coords[i], coords[i + 1]
        side = Side.TOP if i % 2 == 0 else Side.BOTTOM
        uncont = _is_marker(a) or _is_marker(b)
        arcs.append(Semicircle(a, b, side, uncont))
    return StraightDiagram(w, aug, tuple(arcs))


def _is_marker(v: Coordinate) -> bool:
    return v < 0


def pd_code(d: StraightDiagram) -> PDCode:
    """Extract the planar diagram code by traversing the straight strand then
    the semicircular chain; deterministic for a given diagram."""
    n = d.n
    perm = d.word.word.perm
    two_n = 2 * n

    def straight_in(p: int) -> int:
        return p - 1 if p > 1 else two_n

    # Incoming semicircle side per crossing token: interval index parity.
    incoming_top: dict[int, bool] = {}
    semi_pos: dict[int, int] = {}
    for t_idx, e in enumerate(d.augmentation.entries):
        if not _is_marker(e):
            incoming_top[int(e)] = t_idx % 2 == 0
    for j, label in enumerate(perm, start=1):
        semi_pos[label] = n + j

    tuples = []
    for c in range(1, n + 1):
        p, q = c, semi_pos[c]
        q_in, q_out = q - 1, q
        downward = incoming_top[c]
        if d.sign_at(c) is Sign.UNDER:
            if downward:
                tup = (q_in, straight_in(p), q_out, p)
            else:
                tup = (q_in, p, q_out, straight_in(p))
        else:
            if downward:
                tup = (straight_in(p), q_out, p, q_in)
            else:
                tup = (straight_in(p), q_in, p, q_out)
        tuples.append(tup)
    return PDCode(tuple(tuples))


# ---------------------------------------------------------------------------
# Containment transform
# ---------------------------------------------------------------------------


def to_contained(d: StraightDiagram) -> StraightDiagram:
    """Rebuild the diagram so no arc crosses the extended straight strand.

    Follows the constructive well-definedness proof: cut at the left end of
    the strand, extend it leftward across all uncontained arcs with uniform
    new crossings, and reconnect along the unique path of the region-adjacency
    tree, again with uniform crossings.  A trailing bigon between the last old
    passage and the first reconnection crossing is removed when it appears.
    The output is contained, preserves the knot type, and has at most 4n - 6
    crossings (4n - 8 when the trailing reduction fires).
    """
    if d.u == 0:
        return d

    entries = _drop_double_crossers(list(d.augmentation.entries))
    u = sum(1 for e in entries if _is_marker(e))
    if u == 0:
        word = d.word
        return layout(word, AugmentedWord(tuple(int(e) for e in entries)))

    n = d.n
    perm = [int(e) for e in entries if not _is_marker(e)]
    signs_by_label = {label: d.sign_at(label) for label in perm}
    detour_sign = signs_by_label[perm[-1]]  # word-sign given to reconnection crossings
    marker_sign = detour_sign.flipped()

    # Interval list of the extended diagram, minus the dangling cut arc.
    coords: list[Coordinate] = [n + 1] + list(entries) + [0]
    all_intervals: list[tuple[Coordinate, Coordinate, Side]] = []
    for i in range(len(coords) - 1):
        a, b = coords[i], coords[i + 1]
        side = Side.TOP if i % 2 == 0 else Side.BOTTOM
        all_intervals.append((a, b, side))
    cut_arc = all_intervals[-1]
    kept = all_intervals[:-1]

    axis_crossings = sorted([float(e) for e in entries if _is_marker(e)]) + list(range(1, n + 1))

    def innermost(point_lo: float, point_hi: float, side: Side) -> int:
        """Face id above/below a segment: index of the innermost covering
        semicircle on that side, or -1 for the unbounded region."""
        best, best_span = -1, None
        for idx, (a, b, s) in enumerate(kept):
            if s is not side:
                continue
            lo, hi = (a, b) if a < b else (b, a)
            if lo <= point_lo and hi >= point_hi:
                span = float(hi) - float(lo)
                if best_span is None or span < best_span:
                    best, best_span = idx, span
        return best

    # Region-adjacency tree: one vertex per kept semicircle plus the unbounded
    # region; one edge through the strand segment right of each crossing.
    edges: dict[int, tuple[int, int]] = {}
    adjacency: dict[int, list[tuple[int, int]]] = {}
    for ci, chi in enumerate(axis_crossings):
        right = axis_crossings[ci + 1] if ci + 1 < len(axis_crossings) else n + 1
        fa = innermost(chi, right, Side.TOP)
        fb = innermost(chi, right, Side.BOTTOM)
        edges[ci] = (fa, fb)
        adjacency.setdefault(fa, []).append((fb, ci))
        adjacency.setdefault(fb, []).append((fa, ci))

    vertex_count = len(kept) + 1
    if len(edges) != vertex_count - 1:
        raise InvariantViolation(
            f"region graph has {len(edges)} edges for {vertex_count} regions"
        )

    # Locate the face holding the cut arc's free end, just off coordinate 0
    # on the cut arc's side, then walk the unique tree path to the unbounded
    # region.
    cut_side = cut_arc[2]
    start_face = innermost(0.0, 0.0, cut_side)
    path_segments = _tree_path(adjacency, start_face, -1, vertex_count)
    if path_segments is None:
        raise InvariantViolation("region graph is not connected")

    # Passages along the new semicircular chain: old tokens (markers now count
    # as crossings), then one crossing per tree edge on the reconnection path.
    chain: list[tuple[float, Sign]] = []
    for e in entries:
        if _is_marker(e):
            chain.append((float(e), marker_sign))
        else:
            chain.append((float(e), signs_by_label[int(e)]))
    for ci in path_segments:
        chi = axis_crossings[ci]
        right = axis_crossings[ci + 1] if ci + 1 < len(axis_crossings) else n + 1
        chain.append(((float(chi) + float(right)) / 2.0, detour_sign))

    # Trailing Reidemeister-II reduction: the last old passage and the first
    # reconnection crossing cancel when they are strand-adjacent and the
    # chain passes them on the same side.
    if path_segments:
        i_last, i_first = len(entries) - 1, len(entries)
        c1, s1 = chain[i_last]
        c2, s2 = chain[i_first]
        lo, hi = min(c1, c2), max(c1, c2)
        coords_all = [c for c, _ in chain]
        between = [c for c in coords_all if lo < c < hi]
        if s1 is s2 and not between:
            del chain[i_last : i_first + 1]

    new_n = len(chain)
    order = sorted(c for c, _ in chain)
    label_of = {c: i + 1 for i, c in enumerate(order)}
    new_perm = tuple(label_of[c] for c, _ in chain)
    new_signs = tuple(s for _, s in chain)
    new_word = SignedStraightWord(StraightWord(new_perm), new_signs)
    if not is_contained_realizable(new_word.word):
        raise InvariantViolation(
            f"containment transform produced a non-contained word {new_perm}"
        )
    if d.n >= 3 and new_n > 4 * d.n - 6:
        raise InvariantViolation(
            f"containment transform produced {new_n} crossings > 4n-6 = {4 * d.n - 6}"
        )
    return layout(new_word, AugmentedWord(new_perm))


def _drop_double_crossers(entries: list[Coordinate]) -> list[Coordinate]:
    """Arcs crossing the extension twice need not cross it at all: delete
    adjacent marker pairs until none remain."""
    changed = True
    while changed:
        changed = False
        for i in range(len(entries) - 1):
            if _is_marker(entries[i]) and _is_marker(entries[i + 1]):
                del entries[i : i + 2]
                changed = True
                break
    return entries


def _tree_path(
    adjacency: dict[int, list[tuple[int, int]]],
    start: int,
    goal: int,
    vertex_count: int,
) -> Optional[list[int]]:
    """Edge labels along the unique path from start to goal, or None if the
    graph is disconnected.  An empty list means start == goal."""
    if start == goal:
        return []
    parent: dict[int, tuple[int, int]] = {start: (start, -1)}
    queue = [start]
    while queue:
        v = queue.pop(0)
        if v == goal:
            break
        for w_vertex, edge_label in adjacency.get(v, []):
            if w_vertex not in parent:
                parent[w_vertex] = (v, edge_label)
                queue.append(w_vertex)
    if goal not in parent:
        return None
    path: list[int] = []
    v = goal
    while v != start:
        v, edge_label = parent[v]
        path.append(edge_label)
    path.reverse()
    return path


# ---------------------------------------------------------------------------
# SVG rendering
# ---------------------------------------------------------------------------

_SCALE = 40.0
_GAP = 0.22  # half-width of the under-strand break, in axis units


def _fmt(x: float) -> str:
    return f"{x:.2f}".rstrip("0").rstrip(".")


def render_svg(d: StraightDiagram) -> str:
    """Emit a deterministic SVG drawing of the diagram.

    The straight strand is one horizontal path with gaps where the semicircular
    strand passes over; each semicircle is one arc path, trimmed at crossings
    it passes under.  The extended strand is drawn dashed when uncontained
    arcs are present.
    """
    n, u = d.n, d.u
    x_min, x_max = -(u + 1), n + 2
    y_half = max(3.0, (n + 2) / 2.0 + 1.0)

    def X(x: float) -> float:
        return (x - x_min) * _SCALE

    def Y(y: float) -> float:
        return (y_half - y) * _SCALE

    width = (x_max - x_min) * _SCALE
    height = 2 * y_half * _SCALE

    parts: list[str] = []
    parts.append(
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_fmt(width)}" '
        f'height="{_fmt(height)}" viewBox="0 0 {_fmt(width)} {_fmt(height)}">'
    )
    parts.append(
        '<g fill="none" stroke="black" stroke-width="2" stroke-linecap="round">'
    )

    if u > 0:
        parts.append(
            f'<path class="extension" stroke-dasharray="6 6" stroke="#888" '
            f'd="M {_fmt(X(x_min))} {_fmt(Y(0))} L {_fmt(X(0))} {_fmt(Y(0))} '
            f'M {_fmt(X(n + 1))} {_fmt(Y(0))} L {_fmt(X(n + 2))} {_fmt(Y(0))}"/>'
        )

    # Straight strand with gaps at crossings where the chain passes over.
    over_xs = sorted(
        c for c in range(1, n + 1) if d.sign_at(c) is Sign.OVER
    )
    strand_cmds: list[str] = []
    cursor = 0.0
    for c in over_xs:
        strand_cmds.append(
            f"M {_fmt(X(cursor))} {_fmt(Y(0))} L {_fmt(X(c - _GAP))} {_fmt(Y(0))}"
        )
        cursor = c + _GAP
    strand_cmds.append(
        f"M {_fmt(X(cursor))} {_fmt(Y(0))} L {_fmt(X(n + 1))} {_fmt(Y(0))}"
    )
    parts.append(f'<path class="strand" d="{" ".join(strand_cmds)}"/>')

    for s in d.arcs:
        parts.append(_arc_path(d, s, X, Y))

    parts.append("</g>")
    parts.append("</svg>")
    return "\n".join(parts)


def _arc_path(d: StraightDiagram, s: Semicircle, X, Y) -> str:
    r = max(s.radius, _GAP)
    cx = s.center
    up = s.side is Side.TOP

    def trim_angle(at: Coordinate) -> float:
        if _is_marker(at) or not (1 <= at <= d.n):
            return 0.0
        if d.sign_at(int(at)) is Sign.UNDER:
            return min(_GAP / r, 0.9)
        return 0.0

    # Angles measured from the positive x axis at the arc's center.
    th_lo = math.pi - trim_angle(s.lo)
    th_hi = 0.0 + trim_angle(s.hi)

    def point(theta: float) -> tuple[float, float]:
        y = math.sin(theta) * r
        return cx + math.cos(theta) * r, (y if up else -y)

    x1, y1 = point(th_lo)
    x2, y2 = point(th_hi)
    sweep = 1 if up else 0
    cls = "arc uncontained" if s.uncontained else "arc"
    rr = _fmt(r * _SCALE)
    return (
        f'<path class="{cls}" d="M {_fmt(X(x1))} {_fmt(Y(y1))} '
        f'A {rr} {rr} 0 0 {sweep} {_fmt(X(x2))} {_fmt(Y(y2))}"/>'
    )
