"""Small exact linear algebra kernel over the rationals.

Everything in the counting pipeline is integer or Fraction valued; no
floating point is used anywhere.  Matrices are plain nested tuples/lists,
small enough (at most ~40 x 6) that dense Gaussian elimination is the
right tool.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

Vec = tuple[int, ...]


def dot(u: Sequence, v: Sequence):
    return sum(a * b for a, b in zip(u, v))


def vec_gcd(v: Iterable[int]) -> int:
    g = 0
    for x in v:
        g = gcd(g, abs(x))
    return g


def primitive(v: Sequence[int]) -> Vec:
    """Divide an integer vector by the gcd of its entries (zero vector stays zero)."""
    g = vec_gcd(v)
    if g == 0:
        return tuple(v)
    return tuple(x // g for x in v)


def canonical_covector(v: Sequence[int]) -> Vec:
    """Primitive integer covector with positive leading nonzero entry.

    Raises ValueError on the zero vector: a degenerate form defines no
    hyperplane.
    """
    w = primitive(tuple(int(x) for x in v))
    lead = next((x for x in w if x != 0), 0)
    if lead == 0:
        raise ValueError("zero covector is degenerate")
    if lead < 0:
        w = tuple(-x for x in w)
    return w


def fractions_to_primitive_int(v: Sequence[Fraction]) -> Vec:
    """Clear denominators and reduce to a primitive integer vector."""
    denom = 1
    for x in v:
        f = Fraction(x)
        denom = denom * f.denominator // gcd(denom, f.denominator)
    ints = tuple(int(Fraction(x) * denom) for x in v)
    return primitive(ints)


def rref(rows: Sequence[Sequence]) -> list[list[Fraction]]:
    """Reduced row echelon form over Fraction; zero rows are dropped."""
    mat = [[Fraction(x) for x in row] for row in rows]
    if not mat:
        return []
    ncols = len(mat[0])
    out: list[list[Fraction]] = []
    pivot_col = 0
    work = mat
    for col in range(ncols):
        pivot_row = None
        for i, row in enumerate(work):
            if row[col] != 0:
                pivot_row = i
                break
        if pivot_row is None:
            continue
        row = work.pop(pivot_row)
        inv = row[col]
        row = [x / inv for x in row]
        work = [
            [a - r[col] * b for a, b in zip(r, row)] if r[col] != 0 else r
            for r in work
        ]
        out = [
            [a - r[col] * b for a, b in zip(r, row)] if r[col] != 0 else r
            for r in out
        ]
        out.append(row)
    return [r for r in out if any(x != 0 for x in r)]


def rref_primitive(rows: Sequence[Sequence[int]]) -> tuple[Vec, ...]:
    """Canonical key for a rational row space: RREF rescaled to primitive
    integer rows with positive leading entries, ordered by pivot column."""
    reduced = rref(rows)
    return tuple(canonical_covector(fractions_to_primitive_int(r)) for r in reduced)


def rank(rows: Sequence[Sequence[int]]) -> int:
    return len(rref(rows))


def in_row_span(rref_rows: Sequence[Sequence], v: Sequence) -> bool:
    """Does v lie in the row space spanned by (already reduced) rref_rows?"""
    resid = [Fraction(x) for x in v]
    for row in rref_rows:
        lead = next((j for j, x in enumerate(row) if x != 0), None)
        if lead is None:
            continue
        if resid[lead] != 0:
            c = resid[lead] / row[lead]
            resid = [a - c * b for a, b in zip(resid, row)]
    return all(x == 0 for x in resid)


def solve_unique(rows: Sequence[Sequence[int]], rhs: Sequence[int]) -> tuple[Fraction, ...] | None:
    """Solve a square-ish system rows * z = rhs; None unless the solution is unique."""
    n = len(rows[0])
    aug = [list(map(Fraction, row)) + [Fraction(b)] for row, b in zip(rows, rhs)]
    reduced = rref(aug)
    pivots = []
    for r in reduced:
        lead = next(j for j, x in enumerate(r) if x != 0)
        if lead == n:  # 0 = 1: inconsistent
            return None
        pivots.append(lead)
    if len(pivots) < n:
        return None
    sol = [Fraction(0)] * n
    for r, p in zip(reduced, pivots):
        sol[p] = r[n]
    return tuple(sol)


def kernel_basis(rows: Sequence[Sequence[int]], n: int) -> list[Vec]:
    """Primitive integer basis of {z in Q^n : rows * z = 0}."""
    reduced = rref([list(r) for r in rows]) if rows else []
    pivots = [next(j for j, x in enumerate(r) if x != 0) for r in reduced]
    free = [j for j in range(n) if j not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * n
        v[f] = Fraction(1)
        for r, p in zip(reduced, pivots):
            v[p] = -r[f]
        basis.append(fractions_to_primitive_int(v))
    return basis


def lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b) if a and b else max(abs(a), abs(b))


def frac_str(x: Fraction) -> str:
    """Serialize a rational as "p" or "p/q" (lowest terms)."""
    f = Fraction(x)
    if f.denominator == 1:
        return str(f.numerator)
    return f"{f.numerator}/{f.denominator}"


def parse_frac(s: str) -> Fraction:
    return Fraction(s)
