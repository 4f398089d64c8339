"""disclab: a numerics laboratory for analytic function spaces on the unit disc."""

from .weights import PhiSpec, u_of_r, r_of_u, dyadic_radius
from .series import (
    PowerSeries,
    TestFnParams,
    SpaceParams,
    DegreeOverflowError,
    monomial,
    geometric,
    log_reciprocal,
    one_minus_z_power,
    test_function,
    lacunary_from_phi,
    counterexample_symbol,
    cauchy_product,
    evaluate_on_circle,
    parseval_mean_square,
)
from .norms import (
    RadialScheme,
    StolzParams,
    GrowthFit,
    AliasingError,
    integral_mean,
    sup_mean,
    hardy_norm,
    dirichlet_norm,
    dirichlet_norm_detail,
    bloch_norm,
    bmoa_box_norm,
    square_function,
    square_function_profile,
    fefferman_stein,
    maximal_function,
    littlewood_paley_terms,
)

__version__ = "0.1.0"
