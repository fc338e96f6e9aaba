"""Mixed comparison graphs for ruler families and their orientations.

Vertices are multisets of gap indices, stored as vectors in N^m; a single
index interval [j, k] is the consecutive vector e_[j,k].  The climb of a
vector is the minimum number of consecutive vectors summing to it, and it
governs which comparisons are expressible with at most h interval sums.

Every point of an open region induces a total orientation of the graph by
comparing the two linear forms at each edge; that map is injective on
regions and lands in the coherent acyclic orientations, but it is not
onto: this module also builds the explicit six-marking orientation with
empty preimage.
"""

from __future__ import annotations

import itertools
import json
import random
from dataclasses import dataclass, field

from .arrangements import Arrangement, golomb_hyperplanes, consecutive_intervals, interval_vector
from .linalg import dot, Vec
from .rulers import BudgetExceeded


class TieOnEdge(ValueError):
    """The point lies on the hyperplane induced by a graph edge."""


def climb(a) -> int:
    """Sum of the positive ascents of a, reading left to right from 0."""
    total = 0
    prev = 0
    for x in a:
        if x > prev:
            total += x - prev
        prev = x
    return total


def min_consecutive_decomposition(a, *, budget: int = 10**6):
    """Exhaustive minimum number of consecutive vectors summing to a,
    with one witness decomposition.

    Independent of climb(); used to validate it.
    """
    a = tuple(a)
    if all(x == 0 for x in a):
        raise ValueError("decomposition needs a nonzero vector")
    if any(x < 0 for x in a):
        raise ValueError("entries must be nonnegative")
    states = 1
    for x in a:
        states *= x + 1
    if states > budget:
        raise BudgetExceeded(f"{states} residual states exceed budget {budget}")
    m = len(a)
    memo: dict[tuple, tuple] = {}

    def best(residual):
        if all(x == 0 for x in residual):
            return (0, ())
        if residual in memo:
            return memo[residual]
        j = next(i for i, x in enumerate(residual) if x > 0)
        best_r = None
        k = j
        while k < m and residual[k] > 0:
            nxt = tuple(
                x - 1 if j <= i <= k else x for i, x in enumerate(residual)
            )
            r, witness = best(nxt)
            if best_r is None or r + 1 < best_r[0]:
                best_r = (r + 1, ((j + 1, k + 1),) + witness)
            k += 1
        memo[residual] = best_r
        return best_r

    count, witness = best(a)
    return count, list(witness)


def _reduce_pair(u: Vec, v: Vec):
    """Subtract the common part: u = a + c, v = b + c with disjoint supports."""
    c = tuple(min(x, y) for x, y in zip(u, v))
    a = tuple(x - y for x, y in zip(u, c))
    b = tuple(x - y for x, y in zip(v, c))
    return a, b, c


@dataclass(frozen=True)
class MixedGraph:
    """Vertices in N^m with directed edges (fixed comparisons) and
    undirected edges (comparisons an orientation must decide)."""

    m: int
    kind: str  # "golomb" or "bh"
    h: int | None
    vertices: tuple[Vec, ...]
    directed: tuple[tuple[int, int], ...]  # (tail, head) vertex indices
    undirected: tuple[tuple[int, int], ...]  # (i, j) with i < j

    def index(self, v: Vec) -> int:
        return self.vertices.index(v)

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "m": self.m,
            "h": self.h,
            "vertices": [list(v) for v in self.vertices],
            "edges": [
                {"u": i, "v": j, "directed": True} for i, j in self.directed
            ]
            + [{"u": i, "v": j, "directed": False} for i, j in self.undirected],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, separators=(",", ":"))


def build_golomb_graph(m: int) -> MixedGraph:
    """Complete mixed graph on the proper intervals of [m]: containment
    pairs are directed (smaller to larger), all other pairs undirected."""
    ivs = consecutive_intervals(m)
    verts = tuple(sorted(interval_vector(iv, m) for iv in ivs))
    directed = []
    undirected = []
    for i, j in itertools.combinations(range(len(verts)), 2):
        u, v = verts[i], verts[j]
        if all(x <= y for x, y in zip(u, v)):
            directed.append((i, j))
        elif all(x >= y for x, y in zip(u, v)):
            directed.append((j, i))
        else:
            undirected.append((i, j))
    return MixedGraph(
        m=m,
        kind="golomb",
        h=None,
        vertices=verts,
        directed=tuple(directed),
        undirected=tuple(undirected),
    )


def build_bh_graph(m: int, h: int, *, max_vertices: int = 200_000) -> MixedGraph:
    """Graph on all vectors of climb at most h; u-v is an edge when the
    climbs of the reduced parts sum to at most h.  All edges undirected;
    comparisons forced by coherence (zero edges, containment) are derived,
    not stored."""
    if (h + 1) ** m > max_vertices:
        raise BudgetExceeded(f"(h+1)^m = {(h + 1) ** m} exceeds {max_vertices}")
    verts = tuple(
        sorted(
            v
            for v in itertools.product(range(h + 1), repeat=m)
            if climb(v) <= h
        )
    )
    undirected = []
    for i, j in itertools.combinations(range(len(verts)), 2):
        a, b, _ = _reduce_pair(verts[i], verts[j])
        if climb(a) + climb(b) <= h:
            undirected.append((i, j))
    return MixedGraph(
        m=m,
        kind="bh",
        h=h,
        vertices=verts,
        directed=(),
        undirected=tuple(undirected),
    )


@dataclass(frozen=True)
class Orientation:
    """Total orientation: one head per undirected edge, directed edges
    implicit from the graph."""

    graph: MixedGraph = field(compare=False)
    heads: tuple[int, ...]  # head vertex index per graph.undirected entry

    def head(self, i: int, j: int) -> int:
        lo, hi = min(i, j), max(i, j)
        pos = self.graph.undirected.index((lo, hi))
        return self.heads[pos]

    def arcs(self):
        for (i, j), h in zip(self.graph.undirected, self.heads):
            yield (i if h == j else j, h)
        yield from self.graph.directed

    def to_dict(self) -> dict:
        return {
            "edges": [
                {"u": i, "v": j, "head": h}
                for (i, j), h in zip(self.graph.undirected, self.heads)
            ]
        }


def orientation_from_point(z, g: MixedGraph) -> Orientation:
    """Orient every undirected edge toward the endpoint with the larger
    linear form at z.  Requires z strictly positive and off every edge
    hyperplane."""
    zt = tuple(z)
    if any(x <= 0 for x in zt):
        raise ValueError("need a strictly positive point")
    heads = []
    for i, j in g.undirected:
        vi = dot(g.vertices[i], zt)
        vj = dot(g.vertices[j], zt)
        if vi == vj:
            raise TieOnEdge(f"tie on edge {g.vertices[i]} - {g.vertices[j]}")
        heads.append(j if vi < vj else i)
    return Orientation(graph=g, heads=tuple(heads))


def _edge_lookup(g: MixedGraph):
    lut = {}
    for pos, (i, j) in enumerate(g.undirected):
        lut[(i, j)] = pos
    return lut


def is_coherent(o: Orientation, g: MixedGraph) -> bool:
    """Zero edges point away from zero, containment comparisons keep their
    forced direction, and an edge's orientation agrees with that of its
    reduced (common-part-free) pair."""
    vindex = {v: k for k, v in enumerate(g.vertices)}
    lut = _edge_lookup(g)
    zero = tuple(0 for _ in range(g.m))

    def head_of(i, j):
        pos = lut.get((min(i, j), max(i, j)))
        return None if pos is None else o.heads[pos]

    for pos, (i, j) in enumerate(g.undirected):
        u, v = g.vertices[i], g.vertices[j]
        a, b, c = _reduce_pair(u, v)
        head = o.heads[pos]
        if a == zero or b == zero:
            # comparable pair: forced away from the smaller vertex
            small = i if a == zero else j
            if head == small:
                return False
            continue
        if all(x == 0 for x in c):
            continue
        ia, ib = vindex.get(a), vindex.get(b)
        if ia is None or ib is None:
            continue
        reduced_head = head_of(ia, ib)
        if reduced_head is None:
            continue
        # translation invariance: u v must agree with a b
        agrees = (head == j) == (reduced_head == ib)
        if not agrees:
            return False
    return True


def is_acyclic(o: Orientation) -> bool:
    n = len(o.graph.vertices)
    adj = [[] for _ in range(n)]
    for tail, head in o.arcs():
        adj[tail].append(head)
    color = [0] * n  # 0 unseen, 1 active, 2 done
    for start in range(n):
        if color[start]:
            continue
        stack = [(start, iter(adj[start]))]
        color[start] = 1
        while stack:
            node, it = stack[-1]
            advanced = False
            for nxt in it:
                if color[nxt] == 1:
                    return False
                if color[nxt] == 0:
                    color[nxt] = 1
                    stack.append((nxt, iter(adj[nxt])))
                    advanced = True
                    break
            if not advanced:
                color[node] = 2
                stack.pop()
    return True


# ---------------------------------------------------------------------------
# region-to-orientation reports
# ---------------------------------------------------------------------------


@dataclass
class InjectivityReport:
    family: str
    region_total: int
    distinct_orientations: int
    all_coherent: bool
    all_acyclic: bool

    @property
    def injective(self) -> bool:
        return self.distinct_orientations == self.region_total

    def to_dict(self) -> dict:
        return {
            "family": self.family,
            "regions": self.region_total,
            "distinct_orientations": self.distinct_orientations,
            "injective": self.injective,
            "all_coherent": self.all_coherent,
            "all_acyclic": self.all_acyclic,
        }


def _graph_for(a: Arrangement) -> MixedGraph:
    fam = a.family
    if fam.kind.value == "golomb":
        return build_golomb_graph(a.m)
    if fam.kind.value == "bh":
        return build_bh_graph(a.m, fam.h)
    raise ValueError("orientation graphs exist for golomb and bh families")


def injectivity_report(a: Arrangement, *, regions_list=None, workers: int = 1) -> InjectivityReport:
    """Map every region representative through the orientation map and
    check the image is as large as the region census, coherent, acyclic."""
    from .regions import enumerate_regions

    g = _graph_for(a)
    if regions_list is None:
        regions_list = enumerate_regions(a, workers=workers)
    seen = set()
    coherent = True
    acyclic = True
    for reg in regions_list:
        o = orientation_from_point(reg.representative, g)
        seen.add(o.heads)
        coherent = coherent and is_coherent(o, g)
        acyclic = acyclic and is_acyclic(o)
    return InjectivityReport(
        family=a.family.describe(),
        region_total=len(regions_list),
        distinct_orientations=len(seen),
        all_coherent=coherent,
        all_acyclic=acyclic,
    )


# ---------------------------------------------------------------------------
# the six-marking counterexample
# ---------------------------------------------------------------------------

SIX_MARKING_ORDER: tuple[tuple[int, int], ...] = (
    (3, 3),
    (5, 5),
    (1, 1),
    (4, 4),
    (2, 2),
    (3, 4),
    (2, 3),
    (1, 2),
    (4, 5),
    (1, 3),
    (3, 5),
    (2, 4),
    (2, 5),
    (1, 4),
)


def orientation_from_linear_order(g: MixedGraph, order: list[Vec]) -> Orientation:
    """Orient each undirected edge from the earlier to the later vertex."""
    pos = {v: k for k, v in enumerate(order)}
    heads = []
    for i, j in g.undirected:
        heads.append(j if pos[g.vertices[i]] < pos[g.vertices[j]] else i)
    for tail, head in g.directed:
        if pos[g.vertices[tail]] >= pos[g.vertices[head]]:
            raise ValueError("linear order contradicts a directed edge")
    return Orientation(graph=g, heads=tuple(heads))


@dataclass
class CounterexampleReport:
    order: list
    coherent: bool
    acyclic: bool
    same_size_checks: list  # (pair, reduced pair, agrees)
    infeasible_system: list  # the three strict covectors
    certificate: list  # multipliers proving infeasibility
    covector_sum: list
    region_total: int
    distinct_images: int
    preimage_found: bool

    def to_dict(self) -> dict:
        return {
            "order": self.order,
            "coherent": self.coherent,
            "acyclic": self.acyclic,
            "same_size_checks": self.same_size_checks,
            "infeasible_system": self.infeasible_system,
            "certificate": [str(c) for c in self.certificate],
            "covector_sum": self.covector_sum,
            "regions": self.region_total,
            "distinct_images": self.distinct_images,
            "preimage_found": self.preimage_found,
        }


def _same_size_checks(g: MixedGraph, o: Orientation):
    """The nontrivial coherence checks: same-size overlapping pairs and
    their reduced pairs, with agreement flags."""
    vindex = {v: k for k, v in enumerate(g.vertices)}
    out = []
    for pos, (i, j) in enumerate(g.undirected):
        u, v = g.vertices[i], g.vertices[j]
        if sum(u) != sum(v):
            continue
        a, b, c = _reduce_pair(u, v)
        if all(x == 0 for x in c):
            continue
        head = o.heads[pos]
        reduced_head = o.head(vindex[a], vindex[b])
        agrees = (head == j) == (reduced_head == vindex[b])
        out.append(
            {
                "pair": [list(u), list(v)],
                "reduced": [list(a), list(b)],
                "agrees": agrees,
            }
        )
    return out


def six_marking_counterexample(*, workers: int = 1, regions_list=None) -> CounterexampleReport:
    """Build the coherent acyclic orientation of the five-gap ruler graph
    that no region maps to, with an exact infeasibility certificate for
    the three inequalities it forces."""
    from .lp import strict_cone_solve
    from .regions import enumerate_regions

    m = 5
    g = build_golomb_graph(m)
    order = [interval_vector(iv, m) for iv in SIX_MARKING_ORDER]
    if sorted(order) != list(g.vertices):
        raise RuntimeError("order does not cover the vertex set")
    o = orientation_from_linear_order(g, order)
    coherent = is_coherent(o, g)
    acyclic = is_acyclic(o)
    checks = _same_size_checks(g, o)

    # forced by the edges [3,4] -> [2,3], [1,2] -> [4,5], [5] -> [1]
    forced = [
        ((2, 3), (3, 4)),
        ((4, 5), (1, 2)),
        ((1, 1), (5, 5)),
    ]
    covectors = [
        tuple(
            x - y
            for x, y in zip(interval_vector(a, m), interval_vector(b, m))
        )
        for a, b in forced
    ]
    rows = [tuple(1 if i == j else 0 for j in range(m)) for i in range(m)]
    result = strict_cone_solve(rows + covectors)
    certificate = list(result.certificate[m:]) if result.certificate else []
    covector_sum = [sum(col) for col in zip(*covectors)]

    arr = golomb_hyperplanes(m)
    if regions_list is None:
        regions_list = enumerate_regions(arr, workers=workers)
    images = set()
    found = False
    for reg in regions_list:
        heads = orientation_from_point(reg.representative, g).heads
        images.add(heads)
        if heads == o.heads:
            found = True
    return CounterexampleReport(
        order=[list(v) for v in order],
        coherent=coherent,
        acyclic=acyclic,
        same_size_checks=checks,
        infeasible_system=[list(c) for c in covectors],
        certificate=certificate,
        covector_sum=covector_sum,
        region_total=len(regions_list),
        distinct_images=len(images),
        preimage_found=found,
    )


# ---------------------------------------------------------------------------
# climb inequality
# ---------------------------------------------------------------------------


def climb_inequality_holds(a, b, c) -> bool:
    """climb(a+c) + climb(b+c) >= climb(a) + climb(b) for disjoint supports."""
    if any(x > 0 and y > 0 for x, y in zip(a, b)):
        raise ValueError("supports of a and b must be disjoint")
    ac = tuple(x + y for x, y in zip(a, c))
    bc = tuple(x + y for x, y in zip(b, c))
    return climb(ac) + climb(bc) >= climb(a) + climb(b)


def exhaustive_climb_triples(m: int, max_entry: int):
    rng = range(max_entry + 1)
    for a in itertools.product(rng, repeat=m):
        for b in itertools.product(rng, repeat=m):
            if any(x > 0 and y > 0 for x, y in zip(a, b)):
                continue
            for c in itertools.product(rng, repeat=m):
                yield a, b, c


def random_climb_triples(count: int, *, m_range=(2, 6), max_entry: int = 6, seed: int = 20_240_817):
    rng = random.Random(seed)
    produced = 0
    while produced < count:
        m = rng.randint(*m_range)
        support = [rng.randint(0, 2) for _ in range(m)]  # 0: a, 1: b, 2: neither
        a = tuple(rng.randint(1, max_entry) if s == 0 else 0 for s in support)
        b = tuple(rng.randint(1, max_entry) if s == 1 else 0 for s in support)
        c = tuple(rng.randint(0, max_entry) for _ in range(m))
        yield a, b, c
        produced += 1


@dataclass
class ClimbInequalityReport:
    checked: int
    violations: list

    def to_dict(self) -> dict:
        return {"checked": self.checked, "violations": self.violations}


def climb_inequality_report(triples) -> ClimbInequalityReport:
    checked = 0
    violations = []
    for a, b, c in triples:
        checked += 1
        if not climb_inequality_holds(a, b, c):
            violations.append([list(a), list(b), list(c)])
    return ClimbInequalityReport(checked=checked, violations=violations)
