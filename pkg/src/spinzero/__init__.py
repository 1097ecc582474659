"""Zero-free regions and deterministic approximation for ferromagnetic
2-spin partition functions."""

from .errors import (
    BudgetError,
    DomainError,
    GraphError,
    InfeasibleError,
    RegimeError,
    RootFindingError,
    SingularPruneError,
    SpinZeroError,
)
from .geometry import (
    CircularRegion,
    ContractionGeometry,
    OracleProblem,
    Thresholds,
    build_geometry,
    boundary_polar,
    convexity_diagnostics,
    kd_boundary_cloud,
    kd_contains,
    lambda_star_d,
    oracle_min_product,
    phi_discriminant,
    region_contains,
    thresholds,
)
from .graphs import Graph, PruneResult, build_graph, prune_leaves, random_min2_graph
from .partition import (
    SpinParams,
    log_series_connected,
    uniform_fields,
    z_coeffs_ray,
    z_exact,
)
from .polys import LogSeries, Poly, compose_truncate, log_series, polar_form_weights, roots
from .fptas import ApproxResult, CoveringMap, TruncationPlan, approx_z, covering_map, rho_estimate
from .verification import (
    RootReport,
    StripSpec,
    asano_spot_check,
    default_strip,
    gws_spot_check,
    root_locus_check,
    verify_sweep,
)

__version__ = "0.1.0"

__all__ = [
    "ApproxResult",
    "BudgetError",
    "CircularRegion",
    "ContractionGeometry",
    "CoveringMap",
    "DomainError",
    "Graph",
    "GraphError",
    "InfeasibleError",
    "LogSeries",
    "OracleProblem",
    "Poly",
    "PruneResult",
    "RegimeError",
    "RootFindingError",
    "RootReport",
    "SingularPruneError",
    "SpinParams",
    "SpinZeroError",
    "StripSpec",
    "Thresholds",
    "TruncationPlan",
    "approx_z",
    "asano_spot_check",
    "boundary_polar",
    "build_geometry",
    "build_graph",
    "compose_truncate",
    "convexity_diagnostics",
    "covering_map",
    "default_strip",
    "gws_spot_check",
    "kd_boundary_cloud",
    "kd_contains",
    "lambda_star_d",
    "log_series",
    "log_series_connected",
    "oracle_min_product",
    "phi_discriminant",
    "polar_form_weights",
    "prune_leaves",
    "random_min2_graph",
    "region_contains",
    "rho_estimate",
    "root_locus_check",
    "roots",
    "thresholds",
    "uniform_fields",
    "verify_sweep",
    "z_coeffs_ray",
    "z_exact",
]
