"""Data model for knot words, straight words, signed and augmented words.

A straight diagram has all crossings on one horizontal strand; the knot word
is ``(1, 2, ..., n, s(1), ..., s(n))`` and the straight word is the tail
permutation ``s``.  Augmented words interleave negative markers recording
where arcs wrap around the left side of the extended straight strand.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence, Union


class WordError(ValueError):
    """Raised for malformed word input (bad labels, counts, or syntax)."""


class Sign(enum.Enum):
    """Whether the semicircular strand passes over or under the straight strand."""

    OVER = "over"
    UNDER = "under"

    def flipped(self) -> "Sign":
        return Sign.UNDER if self is Sign.OVER else Sign.OVER


Coordinate = Union[int, float, Fraction]


@dataclass(frozen=True)
class KnotWord:
    """A 2n-tuple of crossing labels, each of 1..n occurring exactly twice.

    First occurrences appear in increasing label order: crossings are numbered
    in the order they are first encountered along the traversal.
    """

    entries: tuple[int, ...]

    def __post_init__(self) -> None:
        entries = tuple(self.entries)
        object.__setattr__(self, "entries", entries)
        if len(entries) % 2 != 0:
            raise WordError(f"knot word length must be even, got {len(entries)}")
        n = len(entries) // 2
        counts: dict[int, int] = {}
        for e in entries:
            if not isinstance(e, int) or not (1 <= e <= n):
                raise WordError(f"label {e!r} out of range 1..{n}")
            counts[e] = counts.get(e, 0) + 1
        bad = {k: v for k, v in counts.items() if v != 2}
        if len(counts) != n or bad:
            raise WordError(f"each label must occur exactly twice, got {bad or counts}")
        seen: list[int] = []
        for e in entries:
            if e not in seen:
                if seen and e != seen[-1] + 1:
                    raise WordError(
                        f"first occurrences must appear in increasing order; saw {e} after {seen[-1]}"
                    )
                seen.append(e)

    @property
    def n(self) -> int:
        return len(self.entries) // 2


@dataclass(frozen=True)
class StraightWord:
    """The permutation of 1..n listing second visits along the semicircular strand."""

    perm: tuple[int, ...]

    def __post_init__(self) -> None:
        perm = tuple(self.perm)
        object.__setattr__(self, "perm", perm)
        n = len(perm)
        if n == 0:
            raise WordError("straight word must be nonempty")
        if sorted(perm) != list(range(1, n + 1)):
            raise WordError(f"{perm} is not a permutation of 1..{n}")

    @property
    def n(self) -> int:
        return len(self.perm)

    def __iter__(self):
        return iter(self.perm)


@dataclass(frozen=True)
class SignedStraightWord:
    """A straight word plus one over/under sign per word position.

    ``signs[j] is Sign.UNDER`` means the semicircular strand passes under the
    straight strand at crossing ``perm[j]``.
    """

    word: StraightWord
    signs: tuple[Sign, ...]

    def __post_init__(self) -> None:
        signs = tuple(self.signs)
        object.__setattr__(self, "signs", signs)
        if len(signs) != self.word.n:
            raise WordError(
                f"need {self.word.n} signs, got {len(signs)}"
            )
        if not all(isinstance(s, Sign) for s in signs):
            raise WordError("signs must be Sign values")

    @property
    def n(self) -> int:
        return self.word.n

    def sign_at_crossing(self, label: int) -> Sign:
        return self.signs[self.word.perm.index(label)]

    def mirror(self) -> "SignedStraightWord":
        return SignedStraightWord(self.word, tuple(s.flipped() for s in self.signs))


@dataclass(frozen=True)
class AugmentedWord:
    """Straight word tokens interleaved with negative marker coordinates.

    Positive integer entries are crossing labels; strictly negative entries are
    marker coordinates recording where an arc crosses the extended straight
    strand left of the diagram.  Marker count is bounded by max(0, n - 3).
    """

    entries: tuple[Coordinate, ...]

    def __post_init__(self) -> None:
        entries = tuple(self.entries)
        object.__setattr__(self, "entries", entries)
        labels = [e for e in entries if isinstance(e, int) and e > 0]
        markers = [e for e in entries if not (isinstance(e, int) and e > 0)]
        StraightWord(tuple(labels))  # validates the underlying permutation
        n = len(labels)
        for m in markers:
            if not m < 0:
                raise WordError(f"marker coordinate {m!r} must be strictly negative")
        if len(set(markers)) != len(markers):
            raise WordError(f"marker coordinates must be distinct, got {markers}")
        if len(markers) > max(0, n - 3):
            raise WordError(
                f"{len(markers)} markers exceeds bound max(0, n-3) = {max(0, n - 3)}"
            )

    @property
    def word(self) -> StraightWord:
        return StraightWord(tuple(e for e in self.entries if isinstance(e, int) and e > 0))

    @property
    def markers(self) -> tuple[Coordinate, ...]:
        return tuple(e for e in self.entries if not (isinstance(e, int) and e > 0))

    @property
    def marker_count(self) -> int:
        return len(self.markers)

    def marker_gaps(self) -> tuple[int, ...]:
        """Gap index per marker: gap g sits after the g-th crossing token (0 = before all)."""
        gaps = []
        seen_labels = 0
        for e in self.entries:
            if isinstance(e, int) and e > 0:
                seen_labels += 1
            else:
                gaps.append(seen_labels)
        return tuple(gaps)


def from_knot_word(w: KnotWord) -> Optional[StraightWord]:
    """Return the straight word when ``w = (1..n, tail)``, else None."""
    n = w.n
    head, tail = w.entries[:n], w.entries[n:]
    if head != tuple(range(1, n + 1)):
        return None
    return StraightWord(tail)


def to_knot_word(s: StraightWord) -> KnotWord:
    """Inverse of :func:`from_knot_word`."""
    return KnotWord(tuple(range(1, s.n + 1)) + s.perm)


def reverse_complement(s: StraightWord) -> StraightWord:
    """Relabel for a traversal starting at the right end of the straight strand.

    Maps (s1, ..., sn) to (n+1-sn, ..., n+1-s1).  Members of the orbit are
    realizable iff ``s`` is, and realize the same knot up to mirror image.
    """
    n = s.n
    return StraightWord(tuple(n + 1 - v for v in reversed(s.perm)))


def canonicalize(s: StraightWord) -> StraightWord:
    """Lexicographic minimum over the symmetry orbit {s, reverse_complement(s)}."""
    r = reverse_complement(s)
    return s if s.perm <= r.perm else r


def torus_word(q: int) -> StraightWord:
    """The q-crossing straight word (1, 2, ..., q) of the (2, q) torus knot."""
    if q < 3 or q % 2 == 0:
        raise WordError(f"q must be an odd integer >= 3, got {q}")
    return StraightWord(tuple(range(1, q + 1)))


def torus_signs(q: int) -> tuple[Sign, ...]:
    """Alternating signing that realizes (1..q) as the (2, q) torus knot.

    Along the knot traversal the passages alternate over/under; the straight
    strand contributes the first q passages, so the semicircular visit to
    crossing j is over exactly when q + j is odd.
    """
    return tuple(Sign.OVER if (q + j) % 2 == 1 else Sign.UNDER for j in range(1, q + 1))


_WORD_RE = re.compile(r"^\s*\(\s*(.*?)\s*\)\s*$", re.S)


def _split_entries(text: str) -> list[str]:
    m = _WORD_RE.match(text)
    if not m:
        raise WordError(f"expected parenthesized comma-separated word, got {text!r}")
    body = m.group(1)
    if not body:
        raise WordError("empty word")
    return [part.strip() for part in body.split(",")]


def parse_word(text: str) -> StraightWord:
    """Parse an unsigned word like ``(2,1,4,3)``."""
    values = []
    for part in _split_entries(text):
        try:
            values.append(int(part))
        except ValueError:
            raise WordError(f"bad entry {part!r} in {text!r}") from None
    if any(v <= 0 for v in values):
        raise WordError(f"unsigned word entries must be positive in {text!r}")
    return StraightWord(tuple(values))


def parse_signed(text: str) -> SignedStraightWord:
    """Parse a signed word like ``(2,-1,4,-3)``; minus marks under-crossings."""
    perm, signs = [], []
    for part in _split_entries(text):
        try:
            v = int(part)
        except ValueError:
            raise WordError(f"bad entry {part!r} in {text!r}") from None
        if v == 0:
            raise WordError(f"zero entry in {text!r}")
        perm.append(abs(v))
        signs.append(Sign.UNDER if v < 0 else Sign.OVER)
    return SignedStraightWord(StraightWord(tuple(perm)), tuple(signs))


def parse_augmented(text: str) -> AugmentedWord:
    """Parse an augmented word like ``(2,1,-1,4,3)``; negatives are markers."""
    entries: list[Coordinate] = []
    for part in _split_entries(text):
        try:
            v: Coordinate = int(part)
        except ValueError:
            try:
                v = float(part)
            except ValueError:
                raise WordError(f"bad entry {part!r} in {text!r}") from None
        entries.append(v)
    return AugmentedWord(tuple(entries))


def format_word(s: StraightWord) -> str:
    return "(" + ",".join(str(v) for v in s.perm) + ")"


def format_signed(w: SignedStraightWord) -> str:
    parts = [
        str(-v) if sign is Sign.UNDER else str(v)
        for v, sign in zip(w.word.perm, w.signs)
    ]
    return "(" + ",".join(parts) + ")"


def format_augmented(a: AugmentedWord) -> str:
    def fmt(e: Coordinate) -> str:
        if isinstance(e, int):
            return str(e)
        f = float(e)
        return str(int(f)) if f.is_integer() else str(f)

    return "(" + ",".join(fmt(e) for e in a.entries) + ")"


def all_sign_vectors(n: int) -> Iterable[tuple[Sign, ...]]:
    """All 2^n sign assignments, in deterministic order."""
    for mask in range(1 << n):
        yield tuple(Sign.OVER if (mask >> j) & 1 else Sign.UNDER for j in range(n))


def sign_vectors_mod_mirror(n: int) -> Iterable[tuple[Sign, ...]]:
    """Sign assignments with the global flip (mirror image) deduplicated."""
    for mask in range(1 << n):
        if mask <= (~mask & ((1 << n) - 1)):
            yield tuple(Sign.OVER if (mask >> j) & 1 else Sign.UNDER for j in range(n))
