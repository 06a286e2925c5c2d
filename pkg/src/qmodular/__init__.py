"""Exact q-series algebra, Rogers-Ramanujan and Andrews-Gordon series, and
numerical certification of their vector-valued modularity."""

from .qcore import (
    INF,
    InsufficientOrder,
    NonUnit,
    NormalizedSeries,
    QSeries,
    dissect,
    format_series,
    log_theta_derivative,
    pochhammer,
    q_binomial,
    series_from_json,
    series_invert,
    series_mul,
    series_theta,
    series_to_json,
    substitute_power,
)
from .specials import (
    NormalizedVector,
    SeriesId,
    ag_exponent,
    ag_product,
    ag_sum,
    build_series,
    eisenstein,
    lambert_unweighted,
    lambert_weighted,
    normalized_vector,
    rr_series,
    schur_polynomial,
)
from .identities import SUITES, compare_series, run_suite
from .numerics import (
    check_group_relations,
    eisenstein_inversion,
    eval_series,
    eval_vector,
    numeric_theta,
    solve_multiplier,
    solve_symmetric_involution,
)
from .certify import OrbitDatum, certify_family, goodness_check, local_system_matrix

__version__ = "0.1.0"
