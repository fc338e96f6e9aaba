"""Ruler data model, gap-vector correspondence, and brute-force oracles.

A ruler is a strictly increasing integer sequence 0 = x_0 < ... < x_m = t.
Its gap vector z (successive differences) is a composition of t into m
positive parts, i.e. a lattice point of the open dilated simplex.  The
membership predicates here are the definition-level ground truth against
which all polytope-based counting is validated.
"""

from __future__ import annotations

import itertools
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from enum import Enum

DEFAULT_WORK_BUDGET = 10**8


class BudgetExceeded(RuntimeError):
    """An enumeration would exceed the configured work budget."""


class FamilyKind(str, Enum):
    GOLOMB = "golomb"
    BH = "bh"
    B2G = "b2g"
    B2MINUS = "b2minus"


@dataclass(frozen=True)
class Ruler:
    markings: tuple[int, ...]

    def __post_init__(self):
        xs = tuple(int(x) for x in self.markings)
        object.__setattr__(self, "markings", xs)
        if len(xs) < 2:
            raise ValueError("a ruler needs at least two markings")
        if xs[0] != 0:
            raise ValueError("first marking must be 0")
        if any(a >= b for a, b in zip(xs, xs[1:])):
            raise ValueError("markings must be strictly increasing")

    @property
    def m(self) -> int:
        return len(self.markings) - 1

    @property
    def length(self) -> int:
        return self.markings[-1]

    def reversed(self) -> "Ruler":
        t = self.length
        return Ruler(tuple(t - x for x in reversed(self.markings)))


@dataclass(frozen=True)
class GapVector:
    gaps: tuple[int, ...]

    def __post_init__(self):
        zs = tuple(int(z) for z in self.gaps)
        object.__setattr__(self, "gaps", zs)
        if not zs:
            raise ValueError("gap vector must be nonempty")
        if any(z <= 0 for z in zs):
            raise ValueError("all gaps must be positive")

    @property
    def m(self) -> int:
        return len(self.gaps)

    @property
    def dilation(self) -> int:
        return sum(self.gaps)

    def reversed(self) -> "GapVector":
        return GapVector(tuple(reversed(self.gaps)))


@dataclass(frozen=True)
class FamilySpec:
    kind: FamilyKind
    m: int
    h: int | None = None
    g: int | None = None

    def __post_init__(self):
        object.__setattr__(self, "kind", FamilyKind(self.kind))
        if self.m < 1:
            raise ValueError("m must be at least 1")
        if self.kind is FamilyKind.BH:
            if self.h is None or self.h < 2:
                raise ValueError("bh family needs h >= 2")
            if self.g is not None:
                raise ValueError("bh family takes no g")
        elif self.kind in (FamilyKind.B2G, FamilyKind.B2MINUS):
            if self.g is None or self.g < 1:
                raise ValueError(f"{self.kind.value} family needs g >= 1")
            if self.h is not None:
                raise ValueError(f"{self.kind.value} family takes no h")
        else:
            if self.h is not None or self.g is not None:
                raise ValueError("golomb family takes no h or g")

    def describe(self) -> str:
        if self.kind is FamilyKind.BH:
            return f"bh(m={self.m},h={self.h})"
        if self.kind in (FamilyKind.B2G, FamilyKind.B2MINUS):
            return f"{self.kind.value}(m={self.m},g={self.g})"
        return f"golomb(m={self.m})"

    def constraint_work(self) -> int:
        """Rough per-ruler cost of one membership test, in work units."""
        n = self.m + 1
        if self.kind is FamilyKind.BH:
            return math.comb(n + self.h - 1, self.h)
        return n * (n + 1) // 2


def gaps_from_markings(r: Ruler) -> GapVector:
    """Successive differences of the markings."""
    xs = r.markings
    return GapVector(tuple(b - a for a, b in zip(xs, xs[1:])))


def markings_from_gaps(z: GapVector) -> Ruler:
    """Partial sums of the gaps; inverse of gaps_from_markings."""
    xs = [0]
    for g in z.gaps:
        xs.append(xs[-1] + g)
    return Ruler(tuple(xs))


def _is_golomb(xs: tuple[int, ...]) -> bool:
    seen = set()
    n = len(xs)
    for i in range(n):
        xi = xs[i]
        for j in range(i + 1, n):
            d = xs[j] - xi
            if d in seen:
                return False
            seen.add(d)
    return True


def _is_b2minus(xs: tuple[int, ...], g: int) -> bool:
    counts: dict[int, int] = {}
    n = len(xs)
    for i in range(n):
        xi = xs[i]
        for j in range(i + 1, n):
            d = xs[j] - xi
            c = counts.get(d, 0) + 1
            if c > g:
                return False
            counts[d] = c
    return True


def _is_b2g(xs: tuple[int, ...], g: int) -> bool:
    counts: dict[int, int] = {}
    n = len(xs)
    for i in range(n):
        xi = xs[i]
        for j in range(i, n):  # unordered index multisets {i, j}, i <= j
            s = xi + xs[j]
            c = counts.get(s, 0) + 1
            if c > g:
                return False
            counts[s] = c
    return True


def _is_bh(xs: tuple[int, ...], h: int) -> bool:
    # Two distinct size-h index multisets over all markings (x_0 included)
    # must never share a sum.
    sums = set()
    for combo in itertools.combinations_with_replacement(xs, h):
        s = sum(combo)
        if s in sums:
            return False
        sums.add(s)
    return True


def _member_markings(xs: tuple[int, ...], f: FamilySpec) -> bool:
    if f.kind is FamilyKind.GOLOMB:
        return _is_golomb(xs)
    if f.kind is FamilyKind.BH:
        return _is_bh(xs, f.h)
    if f.kind is FamilyKind.B2G:
        return _is_b2g(xs, f.g)
    return _is_b2minus(xs, f.g)


def is_member(r: Ruler, f: FamilySpec) -> bool:
    """Definition-level membership test for r in the family f."""
    if f.m != r.m:
        raise ValueError(f"family expects m={f.m}, ruler has m={r.m}")
    return _member_markings(r.markings, f)


def gap_vector_is_member(z: GapVector, f: FamilySpec) -> bool:
    return is_member(markings_from_gaps(z), f)


def _compositions(t: int, m: int, first_gap: int | None = None):
    """Compositions of t into m positive parts, lexicographic order."""
    if m == 1:
        if first_gap is None or first_gap == t:
            if t >= 1:
                yield (t,)
        return
    firsts = range(1, t - m + 2) if first_gap is None else (first_gap,)
    for z1 in firsts:
        for rest in _compositions(t - z1, m - 1):
            yield (z1,) + rest


def _count_slice(args) -> int:
    f, t, first_gaps = args
    count = 0
    for z1 in first_gaps:
        xs0 = (0, z1)
        for tail in _compositions(t - z1, f.m - 1):
            xs = xs0
            for g in tail:
                xs = xs + (xs[-1] + g,)
            if _member_markings(xs, f):
                count += 1
    return count


def brute_force_work(f: FamilySpec, t: int) -> int:
    return math.comb(t - 1, f.m - 1) * f.constraint_work()


def count_family_bruteforce(
    f: FamilySpec,
    t: int,
    *,
    budget: int | None = DEFAULT_WORK_BUDGET,
    workers: int = 1,
) -> int:
    """Exact member count at length t by exhausting all compositions.

    The composition space may be partitioned by first gap; the result is
    independent of the partitioning.
    """
    if t < f.m:
        return 0
    if budget is not None and brute_force_work(f, t) > budget:
        raise BudgetExceeded(
            f"brute force for {f.describe()} at t={t} needs "
            f"{brute_force_work(f, t)} work units (budget {budget})"
        )
    if f.m == 1:
        return 1 if _member_markings((0, t), f) else 0
    first_gaps = list(range(1, t - f.m + 2))
    if workers <= 1 or len(first_gaps) < 2:
        return _count_slice((f, t, first_gaps))
    chunks = [first_gaps[i::workers] for i in range(workers)]
    chunks = [c for c in chunks if c]
    with ProcessPoolExecutor(max_workers=len(chunks)) as pool:
        parts = list(pool.map(_count_slice, [(f, t, c) for c in chunks]))
    return sum(parts)
