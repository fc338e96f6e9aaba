"""Exact counting of generalized Golomb rulers via inside-out polytopes."""

__version__ = "0.1.0"

from .rulers import (
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
from .arrangements import (
    Arrangement,
    FlatChain,
    LinearForm,
    arrangement_for,
    b2g_subspaces,
    b2_minus_g_subspaces,
    bh_hyperplanes,
    consecutive_intervals,
    golomb_hyperplanes,
)
from .ehrhart import (
    CountReport,
    InconsistentSamples,
    IntersectionPoset,
    Quasipolynomial,
    SingularSystem,
    build_intersection_poset,
    closed_ehrhart,
    fit_constituent,
    fit_family_quasipolynomial,
    intersection_census_2d,
    multiplicity,
    open_ehrhart,
    period_bound,
    reciprocity_check,
)
from .regions import (
    PointOnHyperplane,
    Region,
    combinatorial_type_of,
    enumerate_regions,
    region_count,
)
from .graphs import (
    MixedGraph,
    Orientation,
    TieOnEdge,
    build_bh_graph,
    build_golomb_graph,
    climb,
    injectivity_report,
    is_acyclic,
    is_coherent,
    min_consecutive_decomposition,
    orientation_from_point,
    six_marking_counterexample,
)

__all__ = [name for name in dir() if not name.startswith("_")]
