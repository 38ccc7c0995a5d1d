"""Exact overlap constants on compact symmetric spaces, rank-dichotomy
classification of chains, and zonal-function limit checks on spheres."""

__version__ = "0.1.0"

from .rootdata import (
    FAMILIES,
    ORBIT_ALPHA1,
    ORBIT_MIDDLE,
    RestrictedRoot,
    RootSystemType,
    SpaceDatum,
    Weight,
    build_space,
    catalog_rows,
    fundamental_weights,
    in_lambda_plus,
    lambda_alpha,
    pad_xi_coeffs,
    positive_nonmultipliable_roots,
    rho,
    simple_roots,
    weight_from_xi,
    zero_weight,
)
from .cfunc import (
    BigRational,
    CFactorParams,
    c_factor,
    c_factor_reference,
    c_gamma,
    c_value,
    overlap_highest_weight,
    overlap_q,
    overlap_q_squared,
)
from .limits import (
    ClassifyConfig,
    ConvergenceReport,
    CSequence,
    DirectSystem,
    VERDICT_POSITIVE,
    VERDICT_UNDECIDED,
    VERDICT_ZERO,
    c_sequence,
    classify,
    classify_scan,
    datum_at_level,
    decay_bound,
    default_max_workers,
    divergence_certificate,
    infinite_rank_root_sequence,
    propagate,
)
from .sphere import (
    MCResult,
    ZonalFunction,
    haar_rotation,
    haar_sample_stabilizer,
    limit_zonal,
    mc_functional_equation,
    ode_residual,
    planar_rotation,
    zonal_eval,
)

__all__ = [
    "__version__",
    "FAMILIES",
    "ORBIT_ALPHA1",
    "ORBIT_MIDDLE",
    "RestrictedRoot",
    "RootSystemType",
    "SpaceDatum",
    "Weight",
    "build_space",
    "catalog_rows",
    "fundamental_weights",
    "in_lambda_plus",
    "lambda_alpha",
    "pad_xi_coeffs",
    "positive_nonmultipliable_roots",
    "rho",
    "simple_roots",
    "weight_from_xi",
    "zero_weight",
    "BigRational",
    "CFactorParams",
    "c_factor",
    "c_factor_reference",
    "c_gamma",
    "c_value",
    "overlap_highest_weight",
    "overlap_q",
    "overlap_q_squared",
    "ClassifyConfig",
    "ConvergenceReport",
    "CSequence",
    "DirectSystem",
    "VERDICT_POSITIVE",
    "VERDICT_UNDECIDED",
    "VERDICT_ZERO",
    "c_sequence",
    "classify",
    "classify_scan",
    "datum_at_level",
    "decay_bound",
    "default_max_workers",
    "divergence_certificate",
    "infinite_rank_root_sequence",
    "propagate",
    "MCResult",
    "ZonalFunction",
    "haar_rotation",
    "haar_sample_stabilizer",
    "limit_zonal",
    "mc_functional_equation",
    "ode_residual",
    "planar_rotation",
    "zonal_eval",
]
