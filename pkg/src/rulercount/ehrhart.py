"""Inside-out Ehrhart counting, multiplicities, and quasipolynomial fits.

Open counts are lattice sweeps of the open dilated simplex that skip
points lying on any arrangement element.  Closed counts weight every
lattice point of the closed simplex by its multiplicity: for hyperplane
arrangements this is the number of closed regions containing the point
(equivalently, the sum of closed-region lattice counts); for subspace
arrangements it is the signed Moebius sum over the intersection
semilattice.  All arithmetic is integer or Fraction; results are exact.
"""

from __future__ import annotations

import itertools
import json
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

from .arrangements import Arrangement, flat_meets_open_simplex
from .linalg import (
    dot,
    frac_str,
    in_row_span,
    lcm,
    rref,
    rref_primitive,
    solve_unique,
    Vec,
)
from .rulers import BudgetExceeded, DEFAULT_WORK_BUDGET


class InconsistentSamples(ValueError):
    """Overdetermined fit samples disagree; the period hypothesis is wrong."""


class SingularSystem(ValueError):
    """Fit samples contain a duplicated argument."""


# ---------------------------------------------------------------------------
# open counting
# ---------------------------------------------------------------------------


def _sweep_work(m: int, t: int) -> int:
    return math.comb(max(t - 2, 0), m - 2) if m >= 2 else 1


def _segment_count(systems, prefix, s: int, m: int) -> int:
    """Points (u, s-u), u in [1, s-1], appended to prefix, avoiding all systems.

    Restricted to the segment, each row of a system is affine in u, so a
    system excludes either nothing, one value of u, or the whole segment.
    """
    excluded = set()
    for rows in systems:
        sol = "all"
        for c in rows:
            k = c[m - 1] * s
            for ci, pi in zip(c, prefix):
                k += ci * pi
            alpha = c[m - 2] - c[m - 1]
            if alpha == 0:
                if k != 0:
                    sol = None
                    break
            else:
                if (-k) % alpha != 0:
                    sol = None
                    break
                u0 = (-k) // alpha
                if sol == "all":
                    sol = u0
                elif sol != u0:
                    sol = None
                    break
        if sol is None:
            continue
        if sol == "all":
            return 0
        if 1 <= sol <= s - 1:
            excluded.add(sol)
    return (s - 1) - len(excluded)


def _open_count_slice(args) -> int:
    systems, m, t, first_range = args
    if m == 1:
        for rows in systems:
            if all(c[0] == 0 for c in rows):
                return 0
        return 1 if t >= 1 else 0
    if m == 2:
        return _segment_count(systems, (), t, m)

    total = 0

    def walk(prefix, remaining, parts_left):
        nonlocal total
        if parts_left == 2:
            total += _segment_count(systems, prefix, remaining, m)
            return
        for z in range(1, remaining - parts_left + 2):
            walk(prefix + (z,), remaining - z, parts_left - 1)

    for z1 in first_range:
        walk((z1,), t - z1, m - 1)
    return total


def open_ehrhart(
    a: Arrangement,
    t: int,
    *,
    budget: int | None = DEFAULT_WORK_BUDGET,
    workers: int = 1,
) -> int:
    """Lattice points of the open t-dilated simplex avoiding every element."""
    if t < 1:
        raise ValueError("open counts need t >= 1")
    m = a.m
    if t < m:
        return 0
    systems = a.element_rows()
    total_rows = sum(len(s) for s in systems) or 1
    if budget is not None and _sweep_work(m, t) * total_rows > budget:
        raise BudgetExceeded(
            f"open sweep at t={t}, m={m} exceeds budget {budget}"
        )
    if m <= 2:
        return _open_count_slice((systems, m, t, None))
    first = list(range(1, t - m + 2))
    if workers <= 1 or len(first) < 2:
        return _open_count_slice((systems, m, t, first))
    chunks = [first[i::workers] for i in range(workers)]
    chunks = [c for c in chunks if c]
    with ProcessPoolExecutor(max_workers=len(chunks)) as pool:
        parts = pool.map(_open_count_slice, [(systems, m, t, c) for c in chunks])
        return sum(parts)


def open_lattice_points_avoiding(a: Arrangement, t: int):
    """Yield the gap vectors counted by open_ehrhart (small t only)."""
    systems = a.element_rows()
    m = a.m

    def comps(total, parts):
        if parts == 1:
            yield (total,)
            return
        for z in range(1, total - parts + 2):
            for rest in comps(total - z, parts - 1):
                yield (z,) + rest

    if t < m:
        return
    for z in comps(t, m):
        if not any(all(dot(r, z) == 0 for r in rows) for rows in systems):
            yield z


# ---------------------------------------------------------------------------
# intersection semilattice and multiplicity
# ---------------------------------------------------------------------------


@dataclass(frozen=True, order=True)
class Flat:
    """Affine flat of the hyperplane {sum z = 1}, as a homogeneous RREF
    system; () is the ambient flat."""

    rows: tuple[Vec, ...]

    @property
    def codim(self) -> int:
        return len(self.rows)

    def contains(self, x) -> bool:
        return all(dot(r, x) == 0 for r in self.rows)


@dataclass
class IntersectionPoset:
    m: int
    flats: tuple[Flat, ...]
    mobius: dict

    def flats_through(self, x):
        return [u for u in self.flats if u.contains(x)]


def _flat_leq(u: Flat, v: Flat) -> bool:
    """u <= v in reverse inclusion, i.e. the flat u contains the flat v."""
    if u.codim > v.codim:
        return False
    v_reduced = rref([list(r) for r in v.rows]) if v.rows else []
    return all(in_row_span(v_reduced, r) for r in u.rows)


def build_intersection_poset(a: Arrangement) -> IntersectionPoset:
    """Closure of the element flats under intersection, with Moebius values.

    Only flats that meet the open simplex are kept: flats touching just
    the boundary belong to no region and carry no multiplicity.
    """
    m = a.m
    ones = tuple(1 for _ in range(m))
    ambient = Flat(())
    flats = {ambient}
    generators = []
    for rows in a.element_rows():
        key = rref_primitive(rows)
        if in_row_span(rref([list(r) for r in key]), ones):
            continue  # empty at every dilation
        if flat_meets_open_simplex(key, m):
            generators.append(Flat(key))
    flats.update(generators)
    frontier = list(flats)
    while frontier:
        nxt = []
        for u in frontier:
            for g in generators:
                key = rref_primitive(list(u.rows) + list(g.rows))
                cand = Flat(key)
                if cand in flats:
                    continue
                if in_row_span(rref([list(r) for r in key]), ones):
                    continue
                if not flat_meets_open_simplex(key, m):
                    continue
                flats.add(cand)
                nxt.append(cand)
        frontier = nxt
    ordered = sorted(flats, key=lambda f: (f.codim, f.rows))
    mobius: dict[Flat, int] = {}
    for u in ordered:
        if u.codim == 0:
            mobius[u] = 1
            continue
        below = sum(mobius[v] for v in ordered if v != u and _flat_leq(v, u))
        mobius[u] = -below
    return IntersectionPoset(m=m, flats=tuple(ordered), mobius=mobius)


def multiplicity(p: IntersectionPoset, z, inside: bool = True) -> int:
    """Signed Moebius sum over the flats through z.

    For hyperplane arrangements this equals the number of closed regions
    containing z.  Points outside the closed simplex have multiplicity 0.
    """
    if not inside:
        return 0
    total = 0
    for u in p.flats:
        if u.contains(z):
            total += p.mobius[u] * (-1) ** u.codim
    return total


# ---------------------------------------------------------------------------
# closed counting
# ---------------------------------------------------------------------------


def _closed_cell_count(constraints, m: int, t: int) -> int:
    """Lattice points of {z >= 0, sum z = t, c . z >= 0 for c in constraints}."""

    def leaf(prefix, s):
        lo, hi = 0, s
        for c in constraints:
            k = c[m - 1] * s
            for ci, pi in zip(c, prefix):
                k += ci * pi
            alpha = c[m - 2] - c[m - 1]
            if alpha == 0:
                if k < 0:
                    return 0
            elif alpha > 0:
                lo = max(lo, -(k // alpha))  # ceil(-k/alpha)
            else:
                hi = min(hi, (-k) // alpha)  # floor(-k/alpha)
        return max(0, hi - lo + 1)

    if m == 1:
        return 1 if all(c[0] * t >= 0 for c in constraints) else 0

    total = 0

    def walk(prefix, remaining, parts_left):
        nonlocal total
        if parts_left == 2:
            total += leaf(prefix, remaining)
            return
        for z in range(0, remaining + 1):
            walk(prefix + (z,), remaining - z, parts_left - 1)

    walk((), t, m)
    return total


def _closed_lattice_points(m: int, t: int):
    def comps(total, parts):
        if parts == 1:
            yield (total,)
            return
        for z in range(0, total + 1):
            for rest in comps(total - z, parts - 1):
                yield (z,) + rest

    yield from comps(t, m)


def closed_ehrhart(
    a: Arrangement,
    t: int,
    *,
    method: str = "auto",
    regions_list=None,
    poset: IntersectionPoset | None = None,
    budget: int | None = DEFAULT_WORK_BUDGET,
) -> int:
    """Multiplicity-weighted lattice count of the closed t-dilated simplex.

    method "regions" sums closed-region lattice counts (hyperplane
    arrangements only); "mobius" sweeps points with the Moebius formula.
    At t = 0 the count is the number of closed regions, computed from the
    region census in the hyperplane case and as the full signed Moebius
    sum otherwise.
    """
    if t < 0:
        raise ValueError("closed counts need t >= 0")
    if method == "auto":
        method = "regions" if a.is_hyperplane else "mobius"
    m = a.m

    if method == "regions":
        from .regions import enumerate_regions

        if regions_list is None:
            regions_list = enumerate_regions(a)
        if t == 0:
            return len(regions_list)
        hyps = [e.coeffs for e in a.elements]
        work = math.comb(t + m - 2, m - 2) if m >= 2 else 1
        if budget is not None and work * max(len(regions_list), 1) > budget:
            raise BudgetExceeded(f"closed sweep at t={t} exceeds budget {budget}")
        total = 0
        for reg in regions_list:
            constraints = [
                tuple(s * x for x in c) for s, c in zip(reg.signs, hyps)
            ]
            total += _closed_cell_count(constraints, m, t)
        return total

    if method == "mobius":
        if poset is None:
            poset = build_intersection_poset(a)
        if t == 0:
            return sum(
                poset.mobius[u] * (-1) ** u.codim for u in poset.flats
            )
        work = math.comb(t + m - 1, m - 1) * max(len(poset.flats), 1)
        if budget is not None and work > budget:
            raise BudgetExceeded(f"mobius sweep at t={t} exceeds budget {budget}")
        total = 0
        for x in _closed_lattice_points(m, t):
            total += multiplicity(poset, x, inside=True)
        return total

    raise ValueError(f"unknown method {method!r}")


# ---------------------------------------------------------------------------
# quasipolynomials
# ---------------------------------------------------------------------------


@dataclass
class Quasipolynomial:
    """Counting function, polynomial on each residue class mod the period.

    Constituent coefficients are stored highest degree first; the table
    may be partial (only the residues that were actually fitted).
    """

    degree: int
    period: int
    constituents: dict = field(default_factory=dict)

    def constituent(self, residue: int) -> tuple[Fraction, ...]:
        r = residue % self.period
        if r not in self.constituents:
            raise ValueError(f"no constituent fitted for residue {r}")
        return self.constituents[r]

    def evaluate(self, t: int) -> Fraction:
        coeffs = self.constituent(t % self.period)
        acc = Fraction(0)
        for c in coeffs:
            acc = acc * t + c
        return acc

    def to_dict(self) -> dict:
        return {
            "degree": self.degree,
            "period": self.period,
            "constituents": {
                str(r): [frac_str(c) for c in coeffs]
                for r, coeffs in sorted(self.constituents.items())
            },
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, separators=(",", ":"))


def fit_constituent(samples, degree: int) -> tuple[Fraction, ...]:
    """Exact polynomial through the samples [(t, value), ...].

    The first degree+1 samples determine the polynomial; any further
    samples are verified against it and a disagreement raises
    InconsistentSamples (the working period is too small).
    """
    pts = list(samples)
    if len(pts) < degree + 1:
        raise ValueError(f"need at least {degree + 1} samples")
    seen = set()
    for t, _ in pts:
        if t in seen:
            raise SingularSystem(f"duplicate sample argument t={t}")
        seen.add(t)
    base = pts[: degree + 1]
    rows = [[t**k for k in range(degree, -1, -1)] for t, _ in base]
    rhs = [v for _, v in base]
    sol = solve_unique(rows, rhs)
    if sol is None:
        raise SingularSystem("interpolation system is singular")
    coeffs = tuple(sol)
    for t, v in pts[degree + 1 :]:
        acc = Fraction(0)
        for c in coeffs:
            acc = acc * t + c
        if acc != v:
            raise InconsistentSamples(
                f"sample at t={t} gives {v}, polynomial predicts {acc}"
            )
    return coeffs


def sample_arguments(residue: int, period: int, count: int, t_min: int = 1) -> list[int]:
    k = 0
    out = []
    while len(out) < count:
        t = residue + period * k
        if t >= t_min:
            out.append(t)
        k += 1
    return out


def fit_family_quasipolynomial(
    counter,
    degree: int,
    period: int,
    residues=None,
    *,
    extra: int = 1,
) -> Quasipolynomial:
    """Fit constituents from a counting callable, one residue at a time.

    `extra` additional samples per residue overdetermine each fit so that
    a wrong period hypothesis raises instead of fitting garbage.
    """
    if residues is None:
        residues = range(period)
    qp = Quasipolynomial(degree=degree, period=period)
    for r in residues:
        ts = sample_arguments(r % period, period, degree + 1 + extra)
        qp.constituents[r % period] = fit_constituent(
            [(t, counter(t)) for t in ts], degree
        )
    return qp


# ---------------------------------------------------------------------------
# reciprocity and periods
# ---------------------------------------------------------------------------


@dataclass
class ReciprocityReport:
    family: str
    period: int
    entries: list  # (t, open_side, closed_count, ok)

    @property
    def all_ok(self) -> bool:
        return all(ok for *_, ok in self.entries)

    @property
    def first_failure(self):
        for t, lhs, rhs, ok in self.entries:
            if not ok:
                return (t, lhs, rhs)
        return None

    def to_dict(self) -> dict:
        return {
            "family": self.family,
            "period": self.period,
            "ok": self.all_ok,
            "entries": [
                {"t": t, "open_at_minus_t": frac_str(l), "closed": r, "ok": ok}
                for t, l, r, ok in self.entries
            ],
        }


def reciprocity_check(
    a: Arrangement,
    t_list,
    *,
    period: int | None = None,
    quasipoly: Quasipolynomial | None = None,
    extra: int = 1,
    budget: int | None = DEFAULT_WORK_BUDGET,
) -> ReciprocityReport:
    """Verify sign * open(-t) = closed(t) exactly for each t.

    The open side is evaluated through fitted constituents at the residue
    of -t; counting at negative arguments is never attempted directly.
    """
    m = a.m
    degree = m - 1
    if quasipoly is None:
        if period is None:
            period = period_bound(a)

        def counter(t):
            return open_ehrhart(a, t, budget=budget)

        residues = sorted({(-t) % period for t in t_list})
        quasipoly = fit_family_quasipolynomial(
            counter, degree, period, residues, extra=extra
        )
    sign = (-1) ** (m - 1)
    regions_list = None
    poset = None
    if a.is_hyperplane:
        from .regions import enumerate_regions

        regions_list = enumerate_regions(a)
    else:
        poset = build_intersection_poset(a)
    entries = []
    for t in t_list:
        lhs = sign * quasipoly.evaluate(-t)
        rhs = closed_ehrhart(
            a, t, regions_list=regions_list, poset=poset, budget=budget
        )
        entries.append((t, lhs, rhs, lhs == rhs))
    return ReciprocityReport(
        family=a.family.describe(), period=quasipoly.period, entries=entries
    )


def period_bound(a: Arrangement) -> int:
    """LCM of coordinate denominators over all vertices of the subdivided
    simplex: solutions of m-1 constraints drawn from element rows and
    facets, lying in the closed simplex.  For subspace arrangements the
    zero-dimensional flats of the semilattice are included as well."""
    m = a.m
    pool = []
    seen = set()
    for rows in a.element_rows():
        for r in rows:
            if r not in seen:
                seen.add(r)
                pool.append(r)
    for i in range(m):
        facet = tuple(1 if j == i else 0 for j in range(m))
        if facet not in seen:
            seen.add(facet)
            pool.append(facet)
    ones = tuple(1 for _ in range(m))
    bound = 1
    for combo in itertools.combinations(pool, m - 1):
        sol = solve_unique(list(combo) + [ones], (0,) * (m - 1) + (1,))
        if sol is None or any(x < 0 for x in sol):
            continue
        for x in sol:
            bound = lcm(bound, x.denominator)
    if not a.is_hyperplane:
        poset = build_intersection_poset(a)
        for u in poset.flats:
            if u.codim == m - 1:
                sol = solve_unique(list(u.rows) + [ones], (0,) * u.codim + (1,))
                if sol is not None:
                    for x in sol:
                        bound = lcm(bound, x.denominator)
    return bound


def intersection_census_2d(a: Arrangement) -> tuple[int, int]:
    """Distinct pairwise crossing points of an m=3 line arrangement, split
    into (open simplex interior, simplex boundary)."""
    if a.m != 3:
        raise ValueError("census is defined for m = 3 arrangements")
    if not a.is_hyperplane:
        raise ValueError("census needs a hyperplane arrangement")
    ones = (1, 1, 1)
    interior = set()
    boundary = set()
    for c1, c2 in itertools.combinations([e.coeffs for e in a.elements], 2):
        sol = solve_unique([c1, c2, ones], (0, 0, 1))
        if sol is None:
            continue
        if all(x > 0 for x in sol):
            interior.add(sol)
        elif all(x >= 0 for x in sol):
            boundary.add(sol)
    return len(interior), len(boundary)


# ---------------------------------------------------------------------------
# reports
# ---------------------------------------------------------------------------


@dataclass
class CountReport:
    family: str
    t: int
    open_count: int
    arrangement_hash: str
    closed_count_with_multiplicity: int | None = None

    def to_dict(self) -> dict:
        return {
            "family": self.family,
            "t": self.t,
            "open_count": self.open_count,
            "closed_count_with_multiplicity": self.closed_count_with_multiplicity,
            "arrangement_hash": self.arrangement_hash,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, separators=(",", ":"))
