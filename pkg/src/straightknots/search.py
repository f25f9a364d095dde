"""Pruned straight-word enumeration, knot identification, and str/cstr tables.

Enumeration yields canonical orbit representatives with the nugatory and
non-realizable first entries pruned.  Identification is by polynomial
fingerprint against an ingested reference table of DT codes; collisions are
reported as ambiguity sets, optionally narrowed by the crossing-number bound
c(K) <= str(K).  Tables record the minimal word length at which each knot
appears, in general and in contained mode.
"""

from __future__ import annotations

import itertools
import json
import multiprocessing
import os
from dataclasses import dataclass, field
from importlib import resources
from typing import Callable, Iterable, Iterator, Optional, Sequence

from .diagram import (
    InvariantViolation,
    NotRealizableError,
    PDCode,
    StraightDiagram,
    layout,
    pd_code,
)
from .invariants import Fingerprint, fingerprint
from .realize import is_contained_realizable, is_realizable, planar_rotations
from .words import (
    AugmentedWord,
    Sign,
    SignedStraightWord,
    StraightWord,
    WordError,
    canonicalize,
    format_augmented,
    format_signed,
    format_word,
    parse_augmented,
    parse_signed,
    parse_word,
    reverse_complement,
    sign_vectors_mod_mirror,
)

MAX_ENUM_N = 12
MAX_TABLE_N = 10
UNKNOT_NAME = "0_1"


class SearchBudgetError(ValueError):
    """Requested enumeration depth exceeds the desk-scale budget."""


# ---------------------------------------------------------------------------
# Bound calculators
# ---------------------------------------------------------------------------


def _check_nonneg(**kwargs: int) -> None:
    for name, v in kwargs.items():
        if not isinstance(v, int) or v < 0:
            raise ValueError(f"{name} must be a nonnegative integer, got {v!r}")


def str_upper_from_mr(m: int, r: int) -> int:
    """Straight-number bound 2^r (m+1) - 1 from m straight-ready crossings
    and r remaining ones; assumes a reduced diagram with m >= 3."""
    _check_nonneg(m=m, r=r)
    if m < 3:
        raise ValueError(f"bound assumes a reduced diagram with m >= 3, got {m}")
    return 2 ** r * (m + 1) - 1


def str_upper_from_crossing(n: int) -> int:
    """Straight-number bound 2^(n-1) - 1 from the crossing number."""
    _check_nonneg(n=n)
    if n < 3:
        raise ValueError(f"bound assumes a reduced diagram with n >= 3, got {n}")
    return 2 ** (n - 1) - 1


def cstr_upper_from_str(n: int) -> int:
    """Contained bound 4n - 8 from the straight number."""
    _check_nonneg(n=n)
    return 4 * n - 8


def petal_upper_from_uc(u: int, c: int) -> int:
    """Petal bound 3u + 2c + 1 from uncontained and contained arc counts."""
    _check_nonneg(u=u, c=c)
    return 3 * u + 2 * c + 1


def petal_upper_from_str(n: int) -> int:
    """Petal bound 3n from the straight number."""
    _check_nonneg(n=n)
    return 3 * n


def petal_upper_from_cstr(n: int) -> int:
    """Petal bound 2n + 3 from the contained straight number."""
    _check_nonneg(n=n)
    return 2 * n + 3


# ---------------------------------------------------------------------------
# Word enumeration
# ---------------------------------------------------------------------------


def _orbit_minimal(w: StraightWord, n: int) -> bool:
    r = reverse_complement(w)
    return not (r.perm < w.perm and r.perm[0] <= n - 2)


def enumerate_words(
    n: int, contained_only: bool = False, max_n: int = MAX_ENUM_N
) -> Iterator[StraightWord]:
    """Canonical realizable words of length n, in lexicographic order.

    First entries n (nugatory) and n-1 (never realizable) are pruned, and one
    representative per {word, reverse_complement} orbit is kept.
    """
    if not 3 <= n <= max_n:
        raise SearchBudgetError(f"enumeration depth n={n} outside budget 3..{max_n}")
    if contained_only:
        yield from _enumerate_contained(n)
        return
    for perm in itertools.permutations(range(1, n + 1)):
        if perm[0] > n - 2:
            continue
        w = StraightWord(perm)
        if not _orbit_minimal(w, n):
            continue
        if is_realizable(w) is not None:
            yield w


def _enumerate_contained(n: int) -> Iterator[StraightWord]:
    """Backtracking enumeration with incremental semicircle checks.

    Prefixes whose new semicircle already intersects an earlier same-side one
    cannot extend to a contained word, so whole subtrees are pruned.
    """
    top: list[tuple[float, float]] = []
    bottom: list[tuple[float, float]] = []
    used = [False] * (n + 1)
    prefix: list[int] = []

    def add(a: float, b: float, side: int) -> bool:
        lo, hi = (a, b) if a < b else (b, a)
        family = top if side == 0 else bottom
        for lo2, hi2 in family:
            if (lo < lo2 < hi) != (lo < hi2 < hi):
                return False
        family.append((lo, hi))
        return True

    def rec(prev: float, side: int) -> Iterator[StraightWord]:
        depth = len(prefix)
        if depth == n:
            if add(prev, 0.0, side):
                w = StraightWord(tuple(prefix))
                if _orbit_minimal(w, n):
                    yield w
                (top if side == 0 else bottom).pop()
            return
        first_cap = n - 2 if depth == 0 else n
        for v in range(1, first_cap + 1):
            if used[v]:
                continue
            if add(prev, float(v), side):
                used[v] = True
                prefix.append(v)
                yield from rec(float(v), 1 - side)
                prefix.pop()
                used[v] = False
                (top if side == 0 else bottom).pop()

    yield from rec(float(n + 1), 0)


def enumerate_words_unpruned(n: int, contained_only: bool = False) -> Iterator[StraightWord]:
    """Every realizable permutation, with no symmetry or first-entry pruning.

    Exists so the pruned enumeration's soundness can be cross-checked.
    """
    for perm in itertools.permutations(range(1, n + 1)):
        w = StraightWord(perm)
        if contained_only:
            if is_contained_realizable(w):
                yield w
        elif is_realizable(w) is not None:
            yield w


# ---------------------------------------------------------------------------
# DT codes: serialization of diagrams, conversion to PD via planar embedding
# ---------------------------------------------------------------------------


def dt_from_diagram(d: StraightDiagram) -> tuple[int, ...]:
    """DT code of a straight diagram: for each odd passage, the paired even
    passage label, negated when the even passage runs over."""
    n = d.n
    perm = d.word.word.perm
    passage_crossing: list[int] = list(range(1, n + 1)) + list(perm)
    passage_over: list[bool] = [d.sign_at(c) is Sign.UNDER for c in range(1, n + 1)] + [
        d.sign_at(c) is Sign.OVER for c in perm
    ]
    positions: dict[int, list[int]] = {}
    for pos, c in enumerate(passage_crossing, start=1):
        positions.setdefault(c, []).append(pos)
    entries: list[int] = []
    for odd in range(1, 2 * n, 2):
        c = passage_crossing[odd - 1]
        p1, p2 = positions[c]
        even = p2 if p1 == odd else p1
        if even % 2 != 0:
            raise InvariantViolation(f"passage parity broken at crossing {c}")
        entries.append(-even if passage_over[even - 1] else even)
    if all(e < 0 for e in entries):
        entries = [-e for e in entries]  # mirror image; normalize to positive form
    return tuple(entries)


def pd_from_dt(entries: Sequence[int]) -> PDCode:
    """Reconstruct a PD code from a DT code via a planar embedding.

    The gadget embedding fixes each crossing's edge-end rotation up to a
    global mirror, which fingerprint canonicalization absorbs.
    """
    n = len(entries)
    evens = [abs(e) for e in entries]
    if sorted(evens) != list(range(2, 2 * n + 1, 2)):
        raise WordError(f"DT entries must cover the even labels 2..{2*n}: {entries}")
    two_n = 2 * n
    seq: list[int] = [0] * two_n
    over_at: list[bool] = [False] * two_n
    for i, e in enumerate(entries):
        odd_pos = 2 * i  # 0-indexed position of odd label 2i+1
        even_pos = abs(e) - 1
        seq[odd_pos] = i
        seq[even_pos] = i
        over_at[even_pos] = e < 0
        over_at[odd_pos] = e > 0
    rotations = planar_rotations(seq)
    if rotations is None:
        raise WordError(f"DT code {entries} is not realizable as a classical knot")

    def edge_label(role: str, pos: int) -> int:
        if role == "in":
            return pos if pos >= 1 else two_n
        return pos + 1

    tuples = []
    for c, rot in rotations.items():
        under_pos = next(
            p for p in range(two_n) if seq[p] == c and not over_at[p]
        )
        idx = rot.index(("in", under_pos))
        ordered = [rot[(idx + k) % 4] for k in range(4)]
        if ordered[2] != ("out", under_pos):
            raise InvariantViolation(f"gadget rotation broken at crossing {c}")
        tuples.append(tuple(edge_label(role, pos) for role, pos in ordered))
    return PDCode(tuple(sorted(tuples)))


# ---------------------------------------------------------------------------
# Reference table
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class KnotRecord:
    name: str
    crossing_number: int
    dt_code: tuple[int, ...]
    fingerprint: Fingerprint

    def __post_init__(self) -> None:
        n = self.crossing_number
        if len(self.dt_code) != n:
            raise WordError(
                f"{self.name}: DT length {len(self.dt_code)} != crossing number {n}"
            )
        if any(e % 2 != 0 or e == 0 for e in self.dt_code):
            raise WordError(f"{self.name}: DT entries must be nonzero and even")
        if len({abs(e) for e in self.dt_code}) != n:
            raise WordError(f"{self.name}: DT absolute values must be distinct")


@dataclass(frozen=True)
class ReferenceTable:
    records: tuple[KnotRecord, ...]
    errors: tuple[tuple[int, str], ...] = ()

    def __post_init__(self) -> None:
        groups: dict[str, list[str]] = {}
        for r in self.records:
            groups.setdefault(r.fingerprint.serialize(), []).append(r.name)
        object.__setattr__(self, "_by_fp", groups)
        object.__setattr__(
            self, "_by_name", {r.name: r for r in self.records}
        )

    def lookup(self, fp: Fingerprint) -> tuple[str, ...]:
        return tuple(self._by_fp.get(fp.serialize(), ()))

    def record(self, name: str) -> KnotRecord:
        return self._by_name[name]

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(r.name for r in self.records)

    @property
    def ambiguity_groups(self) -> tuple[tuple[str, ...], ...]:
        return tuple(
            tuple(names) for names in self._by_fp.values() if len(names) > 1
        )


def parse_record_line(line: str) -> tuple[str, int, tuple[int, ...]]:
    head, bracket = line.split("[", 1)
    dt_text = bracket.rsplit("]", 1)[0]
    parts = [p.strip() for p in head.strip().rstrip(",").split(",")]
    if len(parts) != 2:
        raise WordError(f"expected 'name, crossing_number, [dt...]', got {line!r}")
    name = parts[0]
    crossing_number = int(parts[1])
    dt = tuple(int(x) for x in dt_text.split(",")) if dt_text.strip() else ()
    return name, crossing_number, dt


def ingest_table(source: os.PathLike | str) -> ReferenceTable:
    """Load reference records, computing fingerprints from DT codes.

    Malformed records are collected with their line numbers and skipped; the
    rest of the file still loads.
    """
    records: list[KnotRecord] = []
    errors: list[tuple[int, str]] = []
    with open(source, "r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            try:
                name, crossing_number, dt = parse_record_line(line)
                if crossing_number == 0:
                    records.append(KnotRecord(name, 0, (), fingerprint(PDCode(()))))
                    continue
                pd = pd_from_dt(dt)
                records.append(KnotRecord(name, crossing_number, dt, fingerprint(pd)))
            except (WordError, ValueError, InvariantViolation) as exc:
                errors.append((lineno, str(exc)))
    return ReferenceTable(tuple(records), tuple(errors))


def bundled_table_path() -> str:
    return str(resources.files("straightknots").joinpath("data/reference_table.txt"))


_BUNDLED: Optional[ReferenceTable] = None


def bundled_table() -> ReferenceTable:
    global _BUNDLED
    if _BUNDLED is None:
        _BUNDLED = ingest_table(bundled_table_path())
    return _BUNDLED


# ---------------------------------------------------------------------------
# Identification
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Identification:
    names: tuple[str, ...]
    fingerprint: Fingerprint
    in_table: bool

    @property
    def display(self) -> str:
        if not self.in_table:
            return "not in table"
        if len(self.names) == 1:
            return self.names[0]
        return "{" + ",".join(self.names) + "}"


def identify(
    w: SignedStraightWord,
    table: Optional[ReferenceTable] = None,
    augmentation: Optional[AugmentedWord] = None,
) -> Identification:
    """Name the knot realized by a signed word, via its fingerprint.

    Ambiguity sets are narrowed with the bound c(K) <= str(K) <= n when that
    leaves a single candidate, and reported whole otherwise.
    """
    if table is None:
        table = bundled_table()
    if augmentation is None:
        augmentation = is_realizable(w.word)
    if augmentation is None:
        raise NotRealizableError(
            f"{format_word(w.word)} is realizable only as a virtual knot"
        )
    d = layout(w, augmentation)
    fp = fingerprint(pd_code(d))
    return identify_fingerprint(fp, table, max_crossing=w.n)


def identify_fingerprint(
    fp: Fingerprint, table: ReferenceTable, max_crossing: Optional[int] = None
) -> Identification:
    if fp.is_unknot:
        return Identification((UNKNOT_NAME,), fp, True)
    names = table.lookup(fp)
    if not names:
        composite = _factor_composite(fp, table, max_crossing)
        if composite is not None:
            return Identification((composite,), fp, True)
        return Identification((), fp, False)
    if len(names) > 1 and max_crossing is not None:
        narrowed = tuple(
            nm for nm in names if table.record(nm).crossing_number <= max_crossing
        )
        if len(narrowed) == 1:
            names = narrowed
    return Identification(names, fp, True)


def _factor_composite(
    fp: Fingerprint, table: ReferenceTable, max_crossing: Optional[int]
) -> Optional[str]:
    """Name a fingerprint as a connect sum of table knots, if it factors.

    Jones and Alexander are multiplicative under connect sum, so a fingerprint
    that factors exactly into table fingerprints (each factor taken in either
    mirror orientation) is reported as the sum; a starred factor marks the
    orientation mirrored relative to the table record.  DT codes of composite
    diagrams are ambiguous, which is why sums are named here instead of being
    stored as records.
    """
    from .invariants import LaurentPoly, canonical_jones

    primes = [
        r
        for r in table.records
        if r.crossing_number >= 3 and "#" not in r.name
    ]
    primes.sort(key=lambda r: (r.crossing_number, r.name))
    budget = max_crossing if max_crossing is not None else 12

    target_alex = fp.alexander_canonical

    def alex_of(rec: KnotRecord) -> LaurentPoly:
        return rec.fingerprint.alexander_canonical

    def jones_options(rec: KnotRecord) -> list[LaurentPoly]:
        j = rec.fingerprint.jones_canonical
        m = j.reciprocal_substitution()
        return [j] if m == j else [j, m]

    best: list[Optional[tuple[tuple[str, bool], ...]]] = [None]

    def dfs(
        rem_alex: LaurentPoly,
        acc_jones: LaurentPoly,
        start: int,
        factors: tuple[tuple[str, bool], ...],
        crossings_used: int,
    ) -> None:
        if best[0] is not None:
            return
        if rem_alex == LaurentPoly.constant(1) and len(factors) >= 2:
            if canonical_jones(acc_jones) == fp.jones_canonical:
                best[0] = factors
            return
        for i in range(start, len(primes)):
            rec = primes[i]
            if crossings_used + rec.crossing_number > budget:
                break
            q = rem_alex.divide_exact(alex_of(rec))
            if q is None:
                continue
            q = q.scale(1, -q.min_exp) if not q.is_zero else q
            for flag, j in enumerate(jones_options(rec)):
                dfs(
                    q,
                    acc_jones * j,
                    i,
                    factors + ((rec.name, bool(flag)),),
                    crossings_used + rec.crossing_number,
                )
                if best[0] is not None:
                    return

    dfs(target_alex, LaurentPoly.constant(1), 0, (), 0)
    if best[0] is None:
        return None
    factors = best[0]
    if factors[0][1]:  # normalize the global mirror: first factor unstarred
        factors = tuple((nm, not flg) for nm, flg in factors)
    return "#".join(nm + ("*" if flg else "") for nm, flg in factors)


# ---------------------------------------------------------------------------
# Search results and persistence
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SearchResult:
    name: str
    word: SignedStraightWord
    augmentation: AugmentedWord
    contained: bool
    n: int

    def __post_init__(self) -> None:
        if self.contained != (self.augmentation.marker_count == 0):
            raise ValueError("contained flag must mirror a zero-marker augmentation")

    def to_json_line(self) -> str:
        return json.dumps(
            {
                "name": self.name,
                "word": format_word(self.word.word),
                "signs": format_signed(self.word),
                "augmentation": format_augmented(self.augmentation),
                "contained": self.contained,
                "n": self.n,
            },
            sort_keys=True,
        )

    @classmethod
    def from_json_line(cls, line: str) -> "SearchResult":
        d = json.loads(line)
        return cls(
            name=d["name"],
            word=parse_signed(d["signs"]),
            augmentation=parse_augmented(d["augmentation"]),
            contained=d["contained"],
            n=d["n"],
        )


@dataclass
class KnotTableEntry:
    name: str
    str_upper: Optional[int] = None
    cstr_upper: Optional[int] = None
    str_exact: bool = False
    cstr_exact: bool = False
    str_witness: Optional[SearchResult] = None
    cstr_witness: Optional[SearchResult] = None


# ---------------------------------------------------------------------------
# Table computation
# ---------------------------------------------------------------------------

_WORKER_TABLE: Optional[ReferenceTable] = None


def _worker_init(table_path: Optional[str]) -> None:
    global _WORKER_TABLE
    _WORKER_TABLE = ingest_table(table_path) if table_path else bundled_table()


def _block_results(
    args: tuple[int, list[tuple[int, ...]], bool]
) -> list[tuple[str, str, bool, str, str, str]]:
    """Fingerprint every signed version of a block of words.

    Returns (key, name, contained, word, signs, augmentation) tuples; the key
    is the fingerprint serialization so merging never depends on naming.
    """
    n, perms, contained_only = args
    table = _WORKER_TABLE or bundled_table()
    out = []
    for perm in perms:
        w = StraightWord(perm)
        aug = is_realizable(w)
        if aug is None or (contained_only and aug.marker_count > 0):
            continue
        contained = aug.marker_count == 0
        for signs in sign_vectors_mod_mirror(n):
            sw = SignedStraightWord(w, signs)
            d = layout(sw, aug)
            fp = fingerprint(pd_code(d))
            ident = identify_fingerprint(fp, table, max_crossing=n)
            name = ident.display if ident.in_table else fp.serialize()
            out.append(
                (
                    fp.serialize(),
                    name,
                    contained,
                    format_word(w),
                    format_signed(sw),
                    format_augmented(aug),
                )
            )
    return out


@dataclass
class TableRun:
    entries: dict[str, KnotTableEntry]
    max_n: int
    results: list[SearchResult] = field(default_factory=list)

    def by_name(self, name: str) -> Optional[KnotTableEntry]:
        for e in self.entries.values():
            if e.name == name:
                return e
        return None


BLOCK_SIZE = 48


def _blocks_for(n: int, contained_only: bool) -> list[list[tuple[int, ...]]]:
    words = [w.perm for w in enumerate_words(n, contained_only=contained_only)]
    return [words[i : i + BLOCK_SIZE] for i in range(0, len(words), BLOCK_SIZE)] or [[]]


def compute_table(
    max_n: int,
    contained_only: bool = False,
    out: Optional[str] = None,
    resume: bool = False,
    workers: int = 1,
    table: Optional[ReferenceTable] = None,
    table_path: Optional[str] = None,
    progress: Optional[Callable[[str], None]] = None,
) -> TableRun:
    """Enumerate words and signings for n = 3..max_n and identify every knot.

    Records the minimal n at which each knot appears in general mode (straight
    number upper bound) and in contained mode (contained straight number upper
    bound).  Because every smaller n is searched exhaustively first, a first
    appearance is a certified exact value; bounds at the horizon stay flagged.
    Results append to ``out`` with a block checkpoint, so interrupted runs
    resume without recomputation.
    """
    if not 3 <= max_n <= MAX_TABLE_N:
        raise SearchBudgetError(
            f"table depth {max_n} outside desk budget 3..{MAX_TABLE_N}"
        )
    if table is None:
        table = ingest_table(table_path) if table_path else bundled_table()

    run = TableRun(entries={}, max_n=max_n)
    done_blocks: set[tuple[int, int]] = set()
    out_fh = None
    checkpoint_path = out + ".checkpoint" if out else None
    if out and resume and os.path.exists(out):
        with open(out, "r", encoding="utf-8") as fh:
            for line in fh:
                if line.strip():
                    _absorb(run, SearchResult.from_json_line(line))
        if checkpoint_path and os.path.exists(checkpoint_path):
            with open(checkpoint_path, "r", encoding="utf-8") as fh:
                for line in fh:
                    parts = line.split()
                    if len(parts) == 2:
                        done_blocks.add((int(parts[0]), int(parts[1])))
    if out:
        out_fh = open(out, "a", encoding="utf-8")

    pool = None
    if workers > 1:
        pool = multiprocessing.Pool(
            workers, initializer=_worker_init, initargs=(table_path,)
        )
    try:
        for n in range(3, max_n + 1):
            blocks = _blocks_for(n, contained_only)
            todo = [
                (idx, blk)
                for idx, blk in enumerate(blocks)
                if (n, idx) not in done_blocks
            ]
            args = [(n, blk, contained_only) for _, blk in todo]
            if pool is not None:
                results_per_block = pool.map(_block_results, args)
            else:
                _worker_init(table_path)
                results_per_block = [_block_results(a) for a in args]
            for (idx, _), rows in zip(todo, results_per_block):
                for key, name, contained, word_s, signs_s, aug_s in sorted(rows):
                    result = SearchResult(
                        name=name,
                        word=parse_signed(signs_s),
                        augmentation=parse_augmented(aug_s),
                        contained=contained,
                        n=n,
                    )
                    new_info = _absorb(run, result)
                    if new_info and out_fh:
                        out_fh.write(result.to_json_line() + "\n")
                if out_fh:
                    out_fh.flush()
                if checkpoint_path:
                    with open(checkpoint_path, "a", encoding="utf-8") as fh:
                        fh.write(f"{n} {idx}\n")
            if progress:
                progress(f"n={n} complete ({len(run.entries)} knots so far)")
    finally:
        if pool is not None:
            pool.close()
            pool.join()
        if out_fh:
            out_fh.close()
    return run


def _absorb(run: TableRun, result: SearchResult) -> bool:
    """Merge one result; associative and order-independent within a block
    ordering, so the final table does not depend on worker scheduling."""
    key = result.name
    entry = run.entries.get(key)
    if entry is None:
        entry = KnotTableEntry(name=result.name)
        run.entries[key] = entry
    new_info = False
    if entry.str_upper is None or result.n < entry.str_upper:
        entry.str_upper, entry.str_witness, entry.str_exact = result.n, result, True
        new_info = True
    elif result.n == entry.str_upper and entry.str_witness is not None:
        if _witness_key(result) < _witness_key(entry.str_witness):
            entry.str_witness = result
            new_info = True
    if result.contained:
        if entry.cstr_upper is None or result.n < entry.cstr_upper:
            entry.cstr_upper, entry.cstr_witness, entry.cstr_exact = (
                result.n,
                result,
                True,
            )
            new_info = True
        elif result.n == entry.cstr_upper and entry.cstr_witness is not None:
            if _witness_key(result) < _witness_key(entry.cstr_witness):
                entry.cstr_witness = result
                new_info = True
    run.results.append(result)
    return new_info


def _witness_key(r: SearchResult) -> tuple:
    return (r.word.word.perm, tuple(s.value for s in r.word.signs))


# ---------------------------------------------------------------------------
# Deep contained-mode search (stretch scale, resumable)
# ---------------------------------------------------------------------------


def deep_contained_search(
    n: int,
    out: str,
    resume: bool = True,
    table: Optional[ReferenceTable] = None,
    word_limit: Optional[int] = None,
    progress: Optional[Callable[[str], None]] = None,
) -> int:
    """Resumable contained-mode sweep at depths beyond the table budget.

    Streams newly seen fingerprints to ``out`` and checkpoints the word index;
    intended for the n >= 11 reproduction of the deep contained values, which
    is not desk-scale.  Returns the number of words processed this call.
    """
    if table is None:
        table = bundled_table()
    checkpoint_path = out + ".checkpoint"
    start_index = 0
    seen: set[str] = set()
    if resume and os.path.exists(checkpoint_path):
        with open(checkpoint_path, "r", encoding="utf-8") as fh:
            content = fh.read().split()
            if len(content) == 2 and int(content[0]) == n:
                start_index = int(content[1])
    if resume and os.path.exists(out):
        with open(out, "r", encoding="utf-8") as fh:
            for line in fh:
                if line.strip():
                    seen.add(json.loads(line)["fingerprint"])
    processed = 0
    with open(out, "a", encoding="utf-8") as out_fh:
        for idx, w in enumerate(_enumerate_contained(n)):
            if idx < start_index:
                continue
            if word_limit is not None and processed >= word_limit:
                break
            for signs in sign_vectors_mod_mirror(n):
                sw = SignedStraightWord(w, signs)
                d = layout(sw, AugmentedWord(w.perm))
                fp = fingerprint(pd_code(d))
                if fp.is_unknot:
                    continue
                key = fp.serialize()
                if key in seen:
                    continue
                seen.add(key)
                ident = identify_fingerprint(fp, table, max_crossing=n)
                out_fh.write(
                    json.dumps(
                        {
                            "fingerprint": key,
                            "name": ident.display if ident.in_table else None,
                            "word": format_word(w),
                            "signs": format_signed(sw),
                            "n": n,
                        },
                        sort_keys=True,
                    )
                    + "\n"
                )
            processed += 1
            if processed % 200 == 0:
                out_fh.flush()
                with open(checkpoint_path, "w", encoding="utf-8") as fh:
                    fh.write(f"{n} {idx + 1}\n")
                if progress:
                    progress(f"word {idx + 1}")
        with open(checkpoint_path, "w", encoding="utf-8") as fh:
            fh.write(f"{n} {start_index + processed}\n")
    return processed
