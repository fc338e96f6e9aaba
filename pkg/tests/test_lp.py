import itertools
import random
from fractions import Fraction

import pytest

from rulercount.linalg import dot
from rulercount.lp import strict_cone_solve


def identity_rows(m):
    return [tuple(1 if i == j else 0 for j in range(m)) for i in range(m)]


def test_feasible_witness_is_strict():
    res = strict_cone_solve(identity_rows(3) + [(1, -1, 0), (0, 1, -1)])
    assert res.feasible
    assert all(x > 0 for x in res.witness)
    assert dot((1, -1, 0), res.witness) > 0
    assert dot((0, 1, -1), res.witness) > 0


def test_opposite_halfspaces_infeasible():
    res = strict_cone_solve([(1, -1), (-1, 1)])
    assert not res.feasible
    y = res.certificate
    assert sum(y) == 1 and all(c >= 0 for c in y)
    assert y == (Fraction(1, 2), Fraction(1, 2))


def test_zero_row_infeasible():
    res = strict_cone_solve([(0, 0, 0)])
    assert not res.feasible
    assert res.certificate == (Fraction(1),)


def test_six_marking_system_certificate():
    covectors = [(0, 1, 0, -1, 0), (-1, -1, 0, 1, 1), (1, 0, 0, 0, -1)]
    assert [sum(col) for col in zip(*covectors)] == [0] * 5
    res = strict_cone_solve(identity_rows(5) + covectors)
    assert not res.feasible
    y = res.certificate
    assert y[:5] == (0, 0, 0, 0, 0)
    assert y[5:] == (Fraction(1, 3),) * 3
    combo = [sum(c * r[i] for c, r in zip(y, identity_rows(5) + covectors)) for i in range(5)]
    assert combo == [0] * 5


def test_random_2d_systems_agree_with_grid_search():
    rng = random.Random(7)
    grid = [
        (Fraction(a, 6), Fraction(b, 6))
        for a in range(-18, 19)
        for b in range(-18, 19)
    ]
    for _ in range(120):
        rows = [
            (rng.randint(-3, 3), rng.randint(-3, 3))
            for _ in range(rng.randint(1, 5))
        ]
        if any(all(x == 0 for x in r) for r in rows):
            continue
        res = strict_cone_solve(rows)
        grid_feasible = any(all(dot(r, z) > 0 for r in rows) for z in grid)
        if grid_feasible:
            assert res.feasible
        if res.feasible:
            assert all(dot(r, res.witness) > 0 for r in rows)
        else:
            y = res.certificate
            assert all(c >= 0 for c in y) and sum(y) == 1
            assert all(
                sum(c * r[i] for c, r in zip(y, rows)) == 0 for i in range(2)
            )


def test_exhaustive_sign_systems_m2():
    # every subset of axis-aligned and diagonal constraints in the plane
    pool = [(1, 0), (0, 1), (-1, 0), (0, -1), (1, -1), (-1, 1), (1, 1)]
    for k in (1, 2, 3):
        for rows in itertools.combinations(pool, k):
            res = strict_cone_solve(list(rows))
            if res.feasible:
                assert all(dot(r, res.witness) > 0 for r in rows)
            else:
                y = res.certificate
                assert sum(y) == 1
                assert all(
                    sum(c * r[i] for c, r in zip(y, rows)) == 0 for i in range(2)
                )
