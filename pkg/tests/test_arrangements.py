import itertools

import pytest
from hypothesis import given, strategies as st

from rulercount.arrangements import (
    Arrangement,
    FlatChain,
    LinearForm,
    arrangement_for,
    b2_minus_g_subspaces,
    b2g_subspaces,
    bh_hyperplanes,
    consecutive_intervals,
    golomb_hyperplanes,
    interval_vector,
    prune_infeasible,
)
from rulercount.ehrhart import open_ehrhart, open_lattice_points_avoiding
from rulercount.linalg import canonical_covector, dot, rref_primitive
from rulercount.rulers import (
    FamilyKind,
    FamilySpec,
    GapVector,
    gap_vector_is_member,
)

GOLOMB3_FORMS = {
    (1, -1, 0),
    (0, 1, -1),
    (1, 0, -1),
    (1, 1, -1),
    (1, -1, -1),
}


def test_consecutive_intervals_counts():
    assert consecutive_intervals(1) == []
    assert set(consecutive_intervals(3)) == {(1, 1), (2, 2), (3, 3), (1, 2), (2, 3)}
    assert len(consecutive_intervals(4)) == 9
    for m in range(1, 8):
        assert len(consecutive_intervals(m)) == m * (m + 1) // 2 - 1


def test_golomb_hyperplanes_m2_m3():
    assert {e.coeffs for e in golomb_hyperplanes(2).elements} == {(1, -1)}
    assert {e.coeffs for e in golomb_hyperplanes(3).elements} == GOLOMB3_FORMS


def test_golomb_hyperplane_count_from_interval_pairs():
    # oracle: one covector per unordered disjoint pair, dedup by support
    for m in (3, 4, 5):
        ivs = consecutive_intervals(m)
        pairs = {
            frozenset((u, v))
            for u, v in itertools.combinations(ivs, 2)
            if u[1] < v[0] or v[1] < u[0]
        }
        assert len(golomb_hyperplanes(m).elements) == len(pairs)
    assert len(golomb_hyperplanes(4).elements) == 15
    assert len(golomb_hyperplanes(5).elements) == 35


def test_bh_22_contains_required_forms():
    forms = {e.coeffs for e in bh_hyperplanes(2, 2).elements}
    assert forms == {(1, -1), (2, -1), (1, -2)}


def test_bh_contains_golomb_for_h2():
    for m in (2, 3, 4):
        golomb = {e.coeffs for e in golomb_hyperplanes(m).elements}
        bh2 = {e.coeffs for e in bh_hyperplanes(m, 2).elements}
        assert golomb <= bh2


def test_bh_entries_bounded_by_h():
    for m, h in ((3, 3), (4, 2), (4, 3), (2, 4)):
        for e in bh_hyperplanes(m, h).elements:
            assert all(abs(c) <= h for c in e.coeffs)


def test_bh33_has_twenty_elements():
    assert len(bh_hyperplanes(3, 3).elements) == 20


def test_b2g_42_is_the_single_line():
    arr = b2g_subspaces(4, 2)
    assert len(arr.elements) == 1
    assert arr.elements[0].rows == rref_primitive([(1, 0, 0, -1), (0, 1, -1, 0)])


def test_b2g_32_is_empty():
    assert b2g_subspaces(3, 2).elements == ()


def test_b2g_g1_matches_golomb():
    for m in (2, 3, 4):
        gh = {e.coeffs for e in golomb_hyperplanes(m).elements}
        chains = b2g_subspaces(m, 1).elements
        assert all(c.codim == 1 for c in chains)
        assert {c.rows[0] for c in chains} == gh


def test_b2_minus_g1_matches_golomb():
    for m in (2, 3, 4, 5):
        gh = {e.coeffs for e in golomb_hyperplanes(m).elements}
        chains = b2_minus_g_subspaces(m, 1).elements
        assert {c.rows[0] for c in chains} == gh


def test_b2_minus_m5_g2_includes_overlapping_chain():
    # z1+z2+z3 = z2+z3+z4 = z3+z4+z5: pairwise overlapping intervals
    arr = b2_minus_g_subspaces(5, 2)
    want = rref_primitive([(1, 0, 0, -1, 0), (0, 1, 0, 0, -1)])
    assert want in {e.rows for e in arr.elements}


def test_b2_minus_21_single_hyperplane():
    arr = b2_minus_g_subspaces(2, 1)
    assert len(arr.elements) == 1
    assert arr.elements[0].rows == ((1, -1),)


def test_chain_ranks():
    for arr in (b2g_subspaces(4, 2), b2_minus_g_subspaces(4, 2), b2_minus_g_subspaces(5, 2)):
        g = arr.family.g
        for e in arr.elements:
            assert e.codim == g


def test_arrangement_for_dispatch():
    assert len(arrangement_for(FamilySpec(FamilyKind.GOLOMB, 3)).elements) == 5
    assert len(arrangement_for(FamilySpec(FamilyKind.BH, 3, h=3)).elements) == 20
    assert len(arrangement_for(FamilySpec(FamilyKind.B2G, 4, g=2)).elements) == 1


@given(st.lists(st.integers(min_value=-6, max_value=6), min_size=2, max_size=6))
def test_canonicalization_idempotent_and_sign_invariant(raw):
    if all(x == 0 for x in raw):
        with pytest.raises(ValueError):
            canonical_covector(raw)
        return
    c = canonical_covector(raw)
    assert canonical_covector(c) == c
    assert canonical_covector([-x for x in raw]) == c
    lead = next(x for x in c if x != 0)
    assert lead > 0


def test_elements_are_deduplicated_and_sorted():
    for arr in (golomb_hyperplanes(4), bh_hyperplanes(3, 3), b2_minus_g_subspaces(4, 2)):
        assert len(set(arr.elements)) == len(arr.elements)
        assert list(arr.elements) == sorted(arr.elements)


def test_serialization_stable():
    arr = bh_hyperplanes(3, 3)
    assert arr.to_json() == bh_hyperplanes(3, 3).to_json()
    assert arr.content_hash() == bh_hyperplanes(3, 3).content_hash()
    doc = arr.to_dict()
    assert doc["elements"] == sorted(doc["elements"])
    arr2 = b2g_subspaces(4, 2)
    assert arr2.to_dict()["elements"] == [[[1, 0, 0, -1], [0, 1, -1, 0]]]


def test_membership_consistency_with_arrangements():
    # a gap vector is a family member exactly when it avoids every element
    specs = [
        FamilySpec(FamilyKind.GOLOMB, 3),
        FamilySpec(FamilyKind.BH, 3, h=2),
        FamilySpec(FamilyKind.BH, 3, h=3),
        FamilySpec(FamilyKind.B2G, 4, g=1),
        FamilySpec(FamilyKind.B2G, 4, g=2),
        FamilySpec(FamilyKind.B2MINUS, 4, g=1),
        FamilySpec(FamilyKind.B2MINUS, 4, g=2),
    ]
    for spec in specs:
        arr = arrangement_for(spec)
        systems = arr.element_rows()
        for t in range(spec.m, 22):
            for gaps in itertools.product(range(1, t + 1), repeat=spec.m):
                if sum(gaps) != t:
                    continue
                on_arrangement = any(
                    all(dot(r, gaps) == 0 for r in rows) for rows in systems
                )
                member = gap_vector_is_member(GapVector(gaps), spec)
                assert member == (not on_arrangement), (spec.describe(), gaps)


def test_prune_infeasible_keeps_counts():
    for spec in (
        FamilySpec(FamilyKind.B2MINUS, 4, g=2),
        FamilySpec(FamilyKind.BH, 3, h=3),
    ):
        arr = arrangement_for(spec)
        pruned = prune_infeasible(arr)
        assert len(pruned.elements) <= len(arr.elements)
        for t in range(spec.m, 15):
            assert open_ehrhart(arr, t) == open_ehrhart(pruned, t)


def test_open_points_avoiding_generator_agrees():
    arr = golomb_hyperplanes(3)
    pts = list(open_lattice_points_avoiding(arr, 9))
    assert len(pts) == open_ehrhart(arr, 9)
    assert all(sum(p) == 9 for p in pts)
