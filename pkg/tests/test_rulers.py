import itertools

import pytest
from hypothesis import given, strategies as st

from rulercount.rulers import (
    BudgetExceeded,
    FamilyKind,
    FamilySpec,
    GapVector,
    Ruler,
    count_family_bruteforce,
    gaps_from_markings,
    is_member,
    markings_from_gaps,
)

GOLOMB3 = FamilySpec(FamilyKind.GOLOMB, 3)


def all_rulers(m, t):
    for gaps in itertools.product(range(1, t + 1), repeat=m):
        if sum(gaps) == t:
            yield markings_from_gaps(GapVector(gaps))


def test_gaps_from_markings_examples():
    assert gaps_from_markings(Ruler((0, 1, 3))).gaps == (1, 2)
    assert gaps_from_markings(Ruler((0, 9))).gaps == (9,)
    assert gaps_from_markings(Ruler((0, 1, 4, 9, 11))).gaps == (1, 3, 5, 2)


def test_markings_from_gaps_examples():
    assert markings_from_gaps(GapVector((1, 2))).markings == (0, 1, 3)
    assert markings_from_gaps(GapVector((7,))).markings == (0, 7)
    assert markings_from_gaps(GapVector((1, 3, 5, 2))).markings == (0, 1, 4, 9, 11)


def test_ruler_validation():
    with pytest.raises(ValueError):
        Ruler((1, 2, 3))  # must start at 0
    with pytest.raises(ValueError):
        Ruler((0, 3, 2))  # not increasing
    with pytest.raises(ValueError):
        Ruler((0,))
    with pytest.raises(ValueError):
        GapVector((1, 0, 2))
    with pytest.raises(ValueError):
        GapVector(())


def test_family_spec_validation():
    with pytest.raises(ValueError):
        FamilySpec(FamilyKind.BH, 3)  # missing h
    with pytest.raises(ValueError):
        FamilySpec(FamilyKind.BH, 3, h=1)
    with pytest.raises(ValueError):
        FamilySpec(FamilyKind.B2G, 3)  # missing g
    with pytest.raises(ValueError):
        FamilySpec(FamilyKind.GOLOMB, 3, h=2)
    with pytest.raises(ValueError):
        is_member(Ruler((0, 1, 3)), FamilySpec(FamilyKind.GOLOMB, 4))


@given(
    st.lists(st.integers(min_value=1, max_value=50), min_size=1, max_size=8)
)
def test_round_trip_from_gaps(gaps):
    z = GapVector(tuple(gaps))
    assert gaps_from_markings(markings_from_gaps(z)) == z


@given(
    st.sets(st.integers(min_value=1, max_value=120), min_size=1, max_size=8)
)
def test_round_trip_from_markings(tail):
    r = Ruler((0,) + tuple(sorted(tail)))
    assert markings_from_gaps(gaps_from_markings(r)) == r


def test_golomb_membership_examples():
    assert is_member(Ruler((0, 1, 3)), FamilySpec(FamilyKind.GOLOMB, 2))
    assert not is_member(Ruler((0, 1, 2)), FamilySpec(FamilyKind.GOLOMB, 2))
    assert is_member(Ruler((0, 1, 4, 6)), GOLOMB3)


def test_bh_membership_matches_pairwise_multiset_oracle():
    # independent oracle: compare every pair of size-h index multisets
    def oracle(xs, h):
        multis = list(itertools.combinations_with_replacement(range(len(xs)), h))
        for a, b in itertools.combinations(multis, 2):
            if sum(xs[i] for i in a) == sum(xs[i] for i in b):
                return False
        return True

    spec = FamilySpec(FamilyKind.BH, 3, h=3)
    assert is_member(Ruler((0, 1, 3, 7)), spec) == oracle((0, 1, 3, 7), 3)
    for r in all_rulers(3, 9):
        assert is_member(r, spec) == oracle(r.markings, 3)


def test_b2g_membership_example():
    # 0+6 = 2+4 = 3+3 gives three representations of 6
    spec = FamilySpec(FamilyKind.B2G, 4, g=2)
    assert not is_member(Ruler((0, 2, 3, 4, 6)), spec)
    assert is_member(Ruler((0, 2, 3, 4, 6)), FamilySpec(FamilyKind.B2G, 4, g=3))


def test_count_golomb_m1():
    spec = FamilySpec(FamilyKind.GOLOMB, 1)
    for t in (1, 2, 7, 19):
        assert count_family_bruteforce(spec, t) == 1


def test_count_golomb_m2_matches_direct_loop():
    spec = FamilySpec(FamilyKind.GOLOMB, 2)
    for t in range(2, 25):
        direct = sum(1 for x1 in range(1, t) if x1 != t - x1)
        assert count_family_bruteforce(spec, t) == direct
    assert count_family_bruteforce(spec, 5) == 4
    assert count_family_bruteforce(spec, 6) == 4


def test_count_below_m_is_zero():
    assert count_family_bruteforce(GOLOMB3, 2) == 0


def test_nesting_in_g():
    for t in range(3, 13):
        for r in all_rulers(3, t):
            for g in (1, 2):
                if is_member(r, FamilySpec(FamilyKind.B2MINUS, 3, g=g)):
                    assert is_member(r, FamilySpec(FamilyKind.B2MINUS, 3, g=g + 1))
                if is_member(r, FamilySpec(FamilyKind.B2G, 3, g=g)):
                    assert is_member(r, FamilySpec(FamilyKind.B2G, 3, g=g + 1))


def test_golomb_equals_b2g1_and_b2minus1():
    for m, t_max in ((2, 30), (3, 30), (4, 24), (5, 14)):
        golomb = FamilySpec(FamilyKind.GOLOMB, m)
        b2g1 = FamilySpec(FamilyKind.B2G, m, g=1)
        b2m1 = FamilySpec(FamilyKind.B2MINUS, m, g=1)
        for t in range(m, t_max + 1):
            for r in all_rulers(m, t):
                a = is_member(r, golomb)
                assert a == is_member(r, b2g1)
                assert a == is_member(r, b2m1)


def test_reversal_symmetry():
    specs = [
        FamilySpec(FamilyKind.GOLOMB, 3),
        FamilySpec(FamilyKind.BH, 3, h=3),
        FamilySpec(FamilyKind.B2G, 3, g=2),
        FamilySpec(FamilyKind.B2MINUS, 3, g=2),
    ]
    for t in range(3, 16):
        for r in all_rulers(3, t):
            for spec in specs:
                assert is_member(r, spec) == is_member(r.reversed(), spec)


def test_budget_guard():
    with pytest.raises(BudgetExceeded):
        count_family_bruteforce(FamilySpec(FamilyKind.GOLOMB, 10), 500, budget=1000)


def test_worker_partitioning_is_deterministic():
    spec = FamilySpec(FamilyKind.GOLOMB, 3)
    for t in (10, 17):
        assert count_family_bruteforce(spec, t, workers=2) == count_family_bruteforce(
            spec, t, workers=1
        )
