"""Region enumeration for inside-out simplices over hyperplane arrangements.

A region is a connected component of the open simplex minus the
arrangement; it is determined by its sign vector (one strict inequality
per hyperplane, in canonical element order).  Enumeration is a DFS over
sign prefixes, pruning prefixes whose open cell is empty; emptiness is
decided exactly via the Gordan feasibility kernel, which also supplies a
rational interior representative for every surviving cell.
"""

from __future__ import annotations

import xml.etree.ElementTree as ET
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

from .arrangements import Arrangement
from .linalg import dot, fractions_to_primitive_int, Vec
from .lp import strict_cone_solve
from .rulers import BudgetExceeded

DEFAULT_MAX_ELEMENTS = 40
DEFAULT_MAX_AMBIENT_DIM = 4


class PointOnHyperplane(ValueError):
    """The queried point lies on an arrangement element."""


@dataclass(frozen=True)
class Region:
    signs: tuple[int, ...]
    representative: tuple[Fraction, ...]


def _identity_rows(m: int) -> list[Vec]:
    return [tuple(1 if i == j else 0 for j in range(m)) for i in range(m)]


def _cell_witness(hyps: list[Vec], signs: tuple[int, ...], m: int) -> Vec | None:
    """Primitive integer interior point of the open cell, or None if empty."""
    rows = _identity_rows(m)
    rows += [tuple(s * c for c in hyps[j]) for j, s in enumerate(signs)]
    res = strict_cone_solve(rows)
    if not res.feasible:
        return None
    return fractions_to_primitive_int(res.witness)


def _subtree(hyps: list[Vec], m: int, signs: tuple[int, ...], rep: Vec):
    """All full sign vectors extending `signs`, with integer representatives."""
    depth = len(signs)
    if depth == len(hyps):
        return [(signs, rep)]
    out = []
    val = dot(hyps[depth], rep)
    for s in (1, -1):
        if val * s > 0:
            out += _subtree(hyps, m, signs + (s,), rep)
        else:
            w = _cell_witness(hyps, signs + (s,), m)
            if w is not None:
                out += _subtree(hyps, m, signs + (s,), w)
    return out


def _region_worker(args):
    hyps, m, signs, rep = args
    return _subtree(list(hyps), m, tuple(signs), tuple(rep))


def enumerate_regions(
    a: Arrangement,
    *,
    workers: int = 1,
    max_elements: int = DEFAULT_MAX_ELEMENTS,
    max_ambient_dim: int = DEFAULT_MAX_AMBIENT_DIM,
) -> list[Region]:
    """All regions of (open simplex, arrangement), sorted by sign vector.

    Only hyperplane arrangements divide the simplex into regions; subspace
    arrangements are rejected.
    """
    if not a.is_hyperplane:
        raise ValueError("regions are defined only for hyperplane arrangements")
    if a.m - 1 > max_ambient_dim:
        raise BudgetExceeded(f"ambient dimension {a.m - 1} exceeds {max_ambient_dim}")
    if len(a.elements) > max_elements:
        raise BudgetExceeded(
            f"{len(a.elements)} hyperplanes exceed the guard ({max_elements})"
        )
    hyps = [e.coeffs for e in a.elements]
    m = a.m
    root_rep = tuple(1 for _ in range(m))
    if not hyps:
        pairs = [((), root_rep)]
    elif workers <= 1:
        pairs = _subtree(hyps, m, (), root_rep)
    else:
        frontier = [((), root_rep)]
        depth = 0
        while depth < len(hyps) and len(frontier) < 4 * workers:
            nxt = []
            for signs, rep in frontier:
                val = dot(hyps[depth], rep)
                for s in (1, -1):
                    if val * s > 0:
                        nxt.append((signs + (s,), rep))
                    else:
                        w = _cell_witness(hyps, signs + (s,), m)
                        if w is not None:
                            nxt.append((signs + (s,), w))
            frontier = nxt
            depth += 1
        tasks = [(tuple(hyps), m, signs, rep) for signs, rep in frontier]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            pairs = []
            for part in pool.map(_region_worker, tasks):
                pairs += part
    regions = [
        Region(signs, _normalize_point(rep)) for signs, rep in pairs
    ]
    regions.sort(key=lambda r: r.signs)
    return regions


def _normalize_point(rep: Vec) -> tuple[Fraction, ...]:
    total = sum(rep)
    return tuple(Fraction(x, total) for x in rep)


def region_count(a: Arrangement, **kwargs) -> int:
    return len(enumerate_regions(a, **kwargs))


def combinatorial_type_of(z, a: Arrangement) -> tuple[int, ...]:
    """Sign vector of a point; two family members are combinatorially
    equivalent exactly when their sign vectors agree."""
    if not a.is_hyperplane:
        raise ValueError("sign vectors are defined only for hyperplane arrangements")
    gaps = getattr(z, "gaps", z)
    signs = []
    for e in a.elements:
        v = dot(e.coeffs, gaps)
        if v == 0:
            raise PointOnHyperplane(f"point lies on {e.coeffs}")
        signs.append(1 if v > 0 else -1)
    return tuple(signs)


def closed_regions_containing(regions: list[Region], a: Arrangement, x) -> int:
    """Geometric multiplicity: number of closed regions whose closure
    contains x (a point of the closed simplex)."""
    hyps = [e.coeffs for e in a.elements]
    vals = [dot(c, x) for c in hyps]
    count = 0
    for r in regions:
        if all(v == 0 or (v > 0) == (s > 0) for v, s in zip(vals, r.signs)):
            count += 1
    return count


def distinct_type_count(a: Arrangement, t: int) -> int:
    """Number of distinct sign vectors among family members of length t."""
    from .ehrhart import open_lattice_points_avoiding

    types = set()
    for z in open_lattice_points_avoiding(a, t):
        types.add(combinatorial_type_of(z, a))
    return len(types)


def minimal_saturating_t(a: Arrangement, n_regions: int, t_max: int) -> int | None:
    """Smallest t <= t_max at which every region contains a lattice point,
    reported empirically; None if not reached."""
    for t in range(a.m, t_max + 1):
        if distinct_type_count(a, t) == n_regions:
            return t
    return None


# ---------------------------------------------------------------------------
# SVG rendering (m = 3 only): the simplex is drawn as a triangle with one
# chord per hyperplane.  Display-only; rationals become floats here.
# ---------------------------------------------------------------------------


def _barycentric_to_xy(z, size: float):
    pad = 0.08 * size
    scale = size - 2 * pad
    corners = [(0.0, 0.0), (1.0, 0.0), (0.5, 3 ** 0.5 / 2)]
    x = sum(float(zi) * cx for zi, (cx, _) in zip(z, corners))
    y = sum(float(zi) * cy for zi, (_, cy) in zip(z, corners))
    return pad + x * scale, size - pad - y * scale


def _boundary_crossings(c: Vec):
    """Intersections of {c . z = 0, sum z = 1} with the triangle boundary."""
    from .linalg import solve_unique

    pts = set()
    ones = (1, 1, 1)
    for i in range(3):
        facet = tuple(1 if j == i else 0 for j in range(3))
        sol = solve_unique([c, facet, ones], (0, 0, 1))
        if sol is not None and all(x >= 0 for x in sol):
            pts.add(sol)
    return sorted(pts)


def arrangement_svg(
    a: Arrangement,
    *,
    size: int = 520,
    region_total: int | None = None,
    census: tuple[int, int] | None = None,
) -> str:
    if a.m != 3:
        raise ValueError("SVG rendering supports m = 3 only")
    svg = ET.Element(
        "svg",
        xmlns="http://www.w3.org/2000/svg",
        width=str(size),
        height=str(size),
        viewBox=f"0 0 {size} {size}",
    )
    tri = [(1, 0, 0), (0, 1, 0), (0, 0, 1)]
    pts = " ".join(f"{x:.2f},{y:.2f}" for x, y in (_barycentric_to_xy(v, size) for v in tri))
    ET.SubElement(svg, "polygon", points=pts, fill="none", stroke="black")
    for e in a.elements:
        ends = _boundary_crossings(e.coeffs)
        if len(ends) < 2:
            continue
        (x1, y1) = _barycentric_to_xy(ends[0], size)
        (x2, y2) = _barycentric_to_xy(ends[-1], size)
        ET.SubElement(
            svg,
            "line",
            x1=f"{x1:.2f}",
            y1=f"{y1:.2f}",
            x2=f"{x2:.2f}",
            y2=f"{y2:.2f}",
            stroke="steelblue",
            attrib={"stroke-width": "1"},
        )
    label = f"{a.family.describe()}: {len(a.elements)} hyperplanes"
    if region_total is not None:
        label += f", {region_total} regions"
    if census is not None:
        label += f", crossings {census[0]} interior / {census[1]} boundary"
    text = ET.SubElement(svg, "text", x="10", y="20", attrib={"font-size": "13"})
    text.text = label
    return ET.tostring(svg, encoding="unicode")
