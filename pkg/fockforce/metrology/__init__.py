"""
Force-detection analysis: quadrature sensitivity, estimation bounds and
collective-spin Ramsey comparisons.
"""

from .quadrature import (
    QUADRATURE_FAMILIES,
    apply_weak_force,
    circle_epsilon_min_analytic,
    correlated_pair_variance,
    large_squeezing_limit,
    min_detectable_force,
    quadrature_stats,
    squeezed_epsilon_min_analytic,
)
from .estimation import (
    cat_force_bound,
    cat_generator_variance,
    estimation_bound,
    generalized_cat_readout,
    parity_flip,
)
from .collective_spin import (
    CollectiveSpinOps,
    RamseyScheme,
    casimir_eigenvalue_check,
    collective_spin,
    dicke_state,
    ghz_state,
    ramsey_bounds,
    ramsey_variance,
    ramsey_variance_brute_force,
)

__all__ = [
    "QUADRATURE_FAMILIES",
    "apply_weak_force",
    "circle_epsilon_min_analytic",
    "correlated_pair_variance",
    "large_squeezing_limit",
    "min_detectable_force",
    "quadrature_stats",
    "squeezed_epsilon_min_analytic",
    "cat_force_bound",
    "cat_generator_variance",
    "estimation_bound",
    "generalized_cat_readout",
    "parity_flip",
    "CollectiveSpinOps",
    "RamseyScheme",
    "casimir_eigenvalue_check",
    "collective_spin",
    "dicke_state",
    "ghz_state",
    "ramsey_bounds",
    "ramsey_variance",
    "ramsey_variance_brute_force",
]
