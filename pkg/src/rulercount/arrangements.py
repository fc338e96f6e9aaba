"""Hyperplane and subspace arrangements in gap coordinates.

Each family of generalized rulers corresponds to an arrangement that its
gap vectors must avoid inside the open dilated simplex.  All generators
emit canonical, deduplicated elements:

  * hyperplanes: primitive integer covectors, leading entry positive;
  * codimension-g flats: chains of equalities stored with their reduced
    row echelon form as the canonical key.

Generation order never matters; elements are sorted lexicographically.
"""

from __future__ import annotations

import hashlib
import itertools
import json
from dataclasses import dataclass, field
from fractions import Fraction

from .linalg import canonical_covector, rref_primitive, Vec
from .rulers import BudgetExceeded, FamilyKind, FamilySpec

Interval = tuple[int, int]  # 1-based inclusive [j, k]


def consecutive_intervals(m: int) -> list[Interval]:
    """All nonempty proper subintervals [j, k] of [1, m], sorted."""
    if m < 1:
        raise ValueError("m must be at least 1")
    out = [
        (j, k)
        for j in range(1, m + 1)
        for k in range(j, m + 1)
        if not (j == 1 and k == m)
    ]
    return sorted(out)


def interval_vector(iv: Interval, m: int) -> Vec:
    j, k = iv
    return tuple(1 if j <= i <= k else 0 for i in range(1, m + 1))


@dataclass(frozen=True, order=True)
class LinearForm:
    """Canonical covector c; the hyperplane is {z : c . z = 0}."""

    coeffs: Vec

    @staticmethod
    def canonical(raw) -> "LinearForm":
        return LinearForm(canonical_covector(raw))

    def rows(self) -> tuple[Vec, ...]:
        return (self.coeffs,)


@dataclass(frozen=True, order=True)
class FlatChain:
    """A codimension-g flat given by a chain of g+1 equal expressions.

    `rows` is the canonical RREF key used for ordering, equality and
    deduplication; `forms` keeps the consecutive-equality covectors the
    chain was generated from.
    """

    rows: tuple[Vec, ...]
    forms: tuple[LinearForm, ...] = field(compare=False)

    @staticmethod
    def from_expressions(exprs: list[Vec]) -> "FlatChain":
        diffs = [
            tuple(a - b for a, b in zip(e1, e2)) for e1, e2 in zip(exprs, exprs[1:])
        ]
        forms = tuple(LinearForm.canonical(d) for d in diffs)
        return FlatChain(rows=rref_primitive([f.coeffs for f in forms]), forms=forms)

    @property
    def codim(self) -> int:
        return len(self.rows)


@dataclass(frozen=True)
class Arrangement:
    family: FamilySpec
    m: int
    elements: tuple  # LinearForm... or FlatChain...

    @property
    def is_hyperplane(self) -> bool:
        return all(isinstance(e, LinearForm) for e in self.elements)

    def element_rows(self) -> list[tuple[Vec, ...]]:
        """Uniform access: one homogeneous row system per element."""
        return [e.rows() if isinstance(e, LinearForm) else e.rows for e in self.elements]

    def to_dict(self) -> dict:
        if self.is_hyperplane:
            elems = [list(e.coeffs) for e in self.elements]
        else:
            elems = [[list(r) for r in e.rows] for e in self.elements]
        params = {}
        if self.family.h is not None:
            params["h"] = self.family.h
        if self.family.g is not None:
            params["g"] = self.family.g
        return {
            "family": self.family.kind.value,
            "m": self.m,
            "params": params,
            "elements": elems,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, separators=(",", ":"))

    def content_hash(self) -> str:
        return hashlib.sha256(self.to_json().encode("ascii")).hexdigest()


def _mixed_sign(c: tuple[int, ...]) -> bool:
    return any(x > 0 for x in c) and any(x < 0 for x in c)


def golomb_hyperplanes(m: int) -> Arrangement:
    """One hyperplane sum(U) = sum(V) per unordered pair of disjoint
    proper intervals."""
    if m < 1:
        raise ValueError("m must be at least 1")
    ivs = consecutive_intervals(m)
    forms = set()
    for u, v in itertools.combinations(ivs, 2):
        if u[1] < v[0] or v[1] < u[0]:  # disjoint
            c = tuple(
                a - b for a, b in zip(interval_vector(u, m), interval_vector(v, m))
            )
            forms.add(LinearForm.canonical(c))
    return Arrangement(FamilySpec(FamilyKind.GOLOMB, m), m, tuple(sorted(forms)))


def bh_hyperplanes(m: int, h: int) -> Arrangement:
    """Hyperplanes sum of one interval group = sum of the other, over all
    multisets of at most h proper intervals split into two nonempty groups.

    Distinct splits frequently collide, so covectors are canonicalized and
    deduplicated; one-signed covectors cannot vanish on the open simplex
    and are dropped.
    """
    if m < 1 or h < 2:
        raise ValueError("need m >= 1 and h >= 2")
    ivs = [interval_vector(iv, m) for iv in consecutive_intervals(m)]
    forms = set()
    for left_size in range(1, h):
        for right_size in range(1, h - left_size + 1):
            for left in itertools.combinations_with_replacement(ivs, left_size):
                lsum = tuple(map(sum, zip(*left)))
                for right in itertools.combinations_with_replacement(ivs, right_size):
                    rsum = tuple(map(sum, zip(*right)))
                    c = tuple(a - b for a, b in zip(lsum, rsum))
                    if _mixed_sign(c):
                        forms.add(LinearForm.canonical(c))
    return Arrangement(FamilySpec(FamilyKind.BH, m, h=h), m, tuple(sorted(forms)))


def b2g_subspaces(m: int, g: int) -> Arrangement:
    """Codim-g flats from chains of g+1 equal two-marking sums.

    Index tuples run over 0 <= l_0 < ... < l_g <= r_g < ... < r_0 <= m;
    the chain expressions are written in gap coordinates and the g
    consecutive equalities form the flat.
    """
    if m < 1 or g < 1:
        raise ValueError("need m >= 1 and g >= 1")

    def seg(a: int, b: int) -> Vec:  # sum of z_{a+1}..z_b
        return tuple(1 if a + 1 <= i <= b else 0 for i in range(1, m + 1))

    chains = set()
    for ls in itertools.combinations(range(0, m + 1), g + 1):
        for rs_rev in itertools.combinations(range(ls[g], m + 1), g + 1):
            rs = tuple(reversed(rs_rev))  # r_0 > r_1 > ... > r_g >= l_g
            exprs = [
                tuple(
                    a + b
                    for a, b in zip(seg(ls[0], ls[k]), seg(rs[g], rs[k]))
                )
                for k in range(g + 1)
            ]
            chains.add(FlatChain.from_expressions(exprs))
    return Arrangement(FamilySpec(FamilyKind.B2G, m, g=g), m, tuple(sorted(chains)))


def b2_minus_g_subspaces(m: int, g: int) -> Arrangement:
    """Codim-g flats from (g+1)-sets of intervals that are pairwise
    incomparable under containment, with all interval sums equal."""
    if m < 1 or g < 1:
        raise ValueError("need m >= 1 and g >= 1")
    ivs = [(j, k) for j in range(1, m + 1) for k in range(j, m + 1)]

    def incomparable(a: Interval, b: Interval) -> bool:
        return not (a[0] <= b[0] and b[1] <= a[1]) and not (
            b[0] <= a[0] and a[1] <= b[1]
        )

    chains = set()
    for combo in itertools.combinations(ivs, g + 1):
        if all(incomparable(a, b) for a, b in itertools.combinations(combo, 2)):
            ordered = sorted(combo)
            exprs = [interval_vector(iv, m) for iv in ordered]
            chains.add(FlatChain.from_expressions(exprs))
    return Arrangement(
        FamilySpec(FamilyKind.B2MINUS, m, g=g), m, tuple(sorted(chains))
    )


def arrangement_for(f: FamilySpec) -> Arrangement:
    """Dispatch to the generator matching the family kind."""
    if f.kind is FamilyKind.GOLOMB:
        return golomb_hyperplanes(f.m)
    if f.kind is FamilyKind.BH:
        return bh_hyperplanes(f.m, f.h)
    if f.kind is FamilyKind.B2G:
        return b2g_subspaces(f.m, f.g)
    if f.kind is FamilyKind.B2MINUS:
        return b2_minus_g_subspaces(f.m, f.g)
    raise ValueError(f"unsupported family kind {f.kind!r}")


def flat_meets_open_simplex(rows: tuple[Vec, ...], m: int) -> bool:
    """Exact feasibility: does {z > 0 : rows . z = 0} have a point?

    The system is homogeneous, so meeting the open orthant is the same as
    meeting the open simplex at any dilation.
    """
    from .lp import strict_cone_solve
    from .linalg import kernel_basis

    if not rows:
        return True
    basis = kernel_basis(rows, m)
    if not basis:
        return False
    cone_rows = [tuple(b[i] for b in basis) for i in range(m)]
    return strict_cone_solve(cone_rows).feasible


def prune_infeasible(a: Arrangement) -> Arrangement:
    """Drop elements whose flat misses the open simplex.

    A performance toggle only: such elements contain no open lattice
    point, so counts cannot change.
    """
    rows = a.element_rows()
    kept = tuple(
        e for e, r in zip(a.elements, rows) if flat_meets_open_simplex(r, a.m)
    )
    return Arrangement(a.family, a.m, kept)
