#!/usr/bin/env python3
"""Regenerate the bundled reference table of knots through 7 crossings.

Provenance: records are not copied from an external file.  They are derived
by this script from the package's own exhaustive straight-word search at
3..7 crossings, as follows.

1. Enumerate all realizable straight words with n = 3..7 and all signings,
   and fingerprint every diagram.
2. Collect the distinct nontrivial fingerprints together with the minimal n
   at which each appears.  Every knot with crossing number <= 7 admits a
   minimal-crossing straight diagram, so exactly the 14 standard-table knots
   through 7 crossings appear, each first at n = its crossing number.
3. Attach names by matching each fingerprint's Alexander polynomial against
   the classical values (Rolfsen's appendix; reproduced in every standard
   text).  Those 15 polynomials (unknot included) are pairwise distinct, so
   the matching is forced.  Jones spans (= crossing number, all 14 being
   alternating) and determinants are checked as additional anchors.
4. Serialize each knot's witness diagram as a DT code and write the table.

The result is a table whose every record is cross-validated by two
independent code paths at load time: the DT -> planar-embedding -> PD route
must reproduce the fingerprint found by the straight-word -> layout -> PD
route.
"""

import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from straightknots.diagram import layout, pd_code
from straightknots.invariants import LaurentPoly, fingerprint
from straightknots.realize import is_realizable
from straightknots.search import dt_from_diagram, enumerate_words, ingest_table
from straightknots.words import (
    AugmentedWord,
    SignedStraightWord,
    StraightWord,
    sign_vectors_mod_mirror,
)

# Classical Alexander polynomials, as coefficient lists from exponent 0 up
# (normalized: lowest exponent 0, positive leading coefficient), and
# determinants |Delta(-1)|.
ANCHORS: dict[str, tuple[list[int], int]] = {
    "3_1": ([1, -1, 1], 3),
    "4_1": ([1, -3, 1], 5),
    "5_1": ([1, -1, 1, -1, 1], 5),
    "5_2": ([2, -3, 2], 7),
    "6_1": ([2, -5, 2], 9),
    "6_2": ([1, -3, 3, -3, 1], 11),
    "6_3": ([1, -3, 5, -3, 1], 13),
    "7_1": ([1, -1, 1, -1, 1, -1, 1], 7),
    "7_2": ([3, -5, 3], 11),
    "7_3": ([2, -3, 3, -3, 2], 13),
    "7_4": ([4, -7, 4], 15),
    "7_5": ([2, -4, 5, -4, 2], 17),
    "7_6": ([1, -5, 7, -5, 1], 19),
    "7_7": ([1, -5, 9, -5, 1], 21),
}

HEADER = """\
# Reference table: all knots through 7 crossings (14 prime, 3 composite),
# plus the unknot.
# Format: name, crossing_number, [dt entries]
#
# Provenance: generated by scripts/make_reference_table.py from an exhaustive
# straight-word search at 3..7 crossings.  Prime names are anchored by the
# classical Alexander polynomials and determinants (pairwise distinct through
# 7 crossings); composite names follow from multiplicativity of Jones and
# Alexander under connect sum.  DT codes serialize the minimal witness
# diagrams found by the search.  Every record is re-verified at load time by
# reconstructing the diagram from its DT code via a planar embedding and
# comparing fingerprints.  Appending further records from any published DT
# table extends the identification range; the loader groups fingerprint
# collisions into ambiguity sets automatically.
"""


def poly_coeffs(p: LaurentPoly) -> list[int]:
    out = [0] * (p.span + 1)
    for e, c in p.terms:
        out[e - p.min_exp] = c
    return out


def main() -> None:
    found: dict[str, tuple[int, object, object]] = {}
    for n in range(3, 8):
        for w in enumerate_words(n):
            aug = is_realizable(w)
            for signs in sign_vectors_mod_mirror(n):
                sw = SignedStraightWord(w, signs)
                d = layout(sw, aug)
                fp = fingerprint(pd_code(d))
                if fp.is_unknot:
                    continue
                key = fp.serialize()
                if key not in found:
                    found[key] = (n, fp, d)
    print(f"distinct nontrivial fingerprints through n=7: {len(found)}")
    # 14 prime knots, plus the three composites with 6 or 7 crossings:
    # both trefoil sums and the trefoil/figure-8 sum.
    assert len(found) == 17, "expected 14 prime knots and 3 composites"

    lines = ["0_1, 0, []"]
    assigned: dict[str, str] = {}
    composites: list[tuple[str, object, object]] = []
    for key, (n, fp, d) in found.items():
        alex = poly_coeffs(fp.alexander_canonical)
        det = abs(sum(c * (-1) ** e for e, c in fp.alexander_canonical.terms))
        matches = [
            name
            for name, (coeffs, anchor_det) in ANCHORS.items()
            if coeffs == alex and anchor_det == det
        ]
        if not matches:
            composites.append((key, fp, d))
            continue
        assert len(matches) == 1, f"anchor match failed for {alex} det={det}: {matches}"
        name = matches[0]
        crossing = int(name.split("_")[0])
        assert crossing == n, f"{name} first appeared at n={n}, expected {crossing}"
        span = fp.jones_canonical.span
        assert span == n, f"{name}: Jones span {span} != crossing number {n}"
        assert name not in assigned.values(), f"duplicate assignment {name}"
        assigned[key] = name
        dt = dt_from_diagram(d)
        lines.append(f"{name}, {crossing}, [{','.join(str(e) for e in dt)}]")
        print(f"{name}: n={n} det={det} dt={dt} word={d.word.word.perm}")

    # The three remaining fingerprints are connect sums; DT codes of composite
    # diagrams are ambiguous (the two summands' relative chirality is not
    # pinned by planarity), so sums are named at runtime by factoring Jones
    # and Alexander instead of being stored as records.  Check that here.
    assert len(composites) == 3

    def sort_key(line: str):
        name = line.split(",")[0]
        crossing = int(line.split(",")[1])
        return crossing, name

    body = [lines[0]] + sorted(lines[1:], key=sort_key)
    out_path = (
        Path(__file__).resolve().parent.parent
        / "src"
        / "straightknots"
        / "data"
        / "reference_table.txt"
    )
    out_path.write_text(HEADER + "\n".join(body) + "\n", encoding="utf-8")
    print(f"wrote {out_path}")

    table = ingest_table(out_path)
    assert not table.errors, table.errors
    assert len(table.records) == 15
    for key, name in assigned.items():
        rec = table.record(name)
        assert rec.fingerprint.serialize() == key, (
            f"{name}: DT ingestion fingerprint differs from search fingerprint"
        )
    assert not table.ambiguity_groups
    print("load-time cross-validation passed: DT route reproduces all fingerprints")

    from straightknots.search import identify_fingerprint

    composite_names = sorted(
        identify_fingerprint(fp, table, max_crossing=d.n).display
        for _, fp, d in composites
    )
    assert composite_names == ["3_1#3_1", "3_1#3_1*", "3_1#4_1"], composite_names
    print(f"composite factorization verified: {composite_names}")


if __name__ == "__main__":
    main()
