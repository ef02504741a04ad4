"""Bounds, extremal polynomials and certificates for the integer Chebyshev problem."""

from .certify import (
    AlgebraicLattice,
    Certificate,
    Inapplicable,
    MinimalPoly,
    asymptotic_lower_bound,
    closed_form,
    finite_lower_bound,
    hilbert_fekete_bound,
    n_certificate,
    projection_bound,
    vanishing_check,
)
from .fekete import (
    DegreeDims,
    FeketeSet,
    fekete_search,
    lagrange_sup_check,
    tdiam_estimate,
    vandermonde_exact,
    vandermonde_logabs,
)
from .intsearch import (
    SearchRefused,
    SearchResult,
    coefficient_box,
    exhaustive_search,
    lattice_search,
    minkowski_construct,
    search,
    tz_sequence,
)
from .plot import emit_plot
from .polycore import (
    IntPoly,
    Poly,
    QComplex,
    arith,
    chebyshev_classical,
    compose,
    eval_exact,
    exact_divide,
    homogeneous_part,
    monomials_upto,
    order_compare,
    restrict_to_graph,
)
from .regions import (
    Box,
    GraphSegment,
    Lemniscate,
    PointSet,
    PolyMap,
    Polydisk,
    is_simple_map,
    project,
    region_from_json,
    region_to_json,
    sample_grid,
)
from .supnorm import NormEnclosure, supnorm_box, supnorm_polydisk, supnorm_region

__version__ = "0.1.0"

__all__ = [
    "AlgebraicLattice",
    "Box",
    "Certificate",
    "DegreeDims",
    "FeketeSet",
    "GraphSegment",
    "Inapplicable",
    "IntPoly",
    "Lemniscate",
    "MinimalPoly",
    "NormEnclosure",
    "PointSet",
    "Poly",
    "PolyMap",
    "Polydisk",
    "QComplex",
    "SearchRefused",
    "SearchResult",
    "arith",
    "asymptotic_lower_bound",
    "chebyshev_classical",
    "closed_form",
    "coefficient_box",
    "compose",
    "emit_plot",
    "eval_exact",
    "exact_divide",
    "exhaustive_search",
    "fekete_search",
    "finite_lower_bound",
    "hilbert_fekete_bound",
    "homogeneous_part",
    "is_simple_map",
    "lagrange_sup_check",
    "lattice_search",
    "minkowski_construct",
    "monomials_upto",
    "n_certificate",
    "order_compare",
    "project",
    "projection_bound",
    "region_from_json",
    "region_to_json",
    "restrict_to_graph",
    "sample_grid",
    "search",
    "supnorm_box",
    "supnorm_polydisk",
    "supnorm_region",
    "tdiam_estimate",
    "tz_sequence",
    "vandermonde_exact",
    "vandermonde_logabs",
    "vanishing_check",
]
