"""
Truncated Fock-space containers, mode operators and tensor-product machinery.
"""

from .operators import (
    ModeOperator,
    annihilation,
    creation,
    displacement,
    displacement_analytic,
    identity,
    kron_operator,
    number,
    quadrature_x,
    quadrature_y,
    rotation,
    truncation_rule,
)
from .state import (
    BEAM_SPLITTER_CONVENTIONS,
    PHASE_I,
    REAL,
    AnyState,
    FockVector,
    MultiModeState,
    apply_all_modes,
    apply_single_mode,
    as_multimode,
    beam_splitter,
    check_memory_cap,
    expectation,
    fidelity,
    inner_product,
    reduced_schmidt_coefficients,
    tail_mass,
)

__all__ = [
    "ModeOperator",
    "annihilation",
    "creation",
    "displacement",
    "displacement_analytic",
    "identity",
    "kron_operator",
    "number",
    "quadrature_x",
    "quadrature_y",
    "rotation",
    "truncation_rule",
    "BEAM_SPLITTER_CONVENTIONS",
    "PHASE_I",
    "REAL",
    "AnyState",
    "FockVector",
    "MultiModeState",
    "apply_all_modes",
    "apply_single_mode",
    "as_multimode",
    "beam_splitter",
    "check_memory_cap",
    "expectation",
    "fidelity",
    "inner_product",
    "reduced_schmidt_coefficients",
    "tail_mass",
]
