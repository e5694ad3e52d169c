"""
State families: coherent, squeezed, two-mode squeezed, circle and cat states.
"""

from .constructors import (
    LEAKAGE_TOL,
    Parity,
    build,
    cat,
    circle_mean_photon,
    circle_state,
    coherent,
    generalized_cat,
    n_mode_cat,
    parity_basis,
    squeezed_vacuum,
    suggest_dim,
    support_residue,
    two_mode_squeezed,
)
from .serialization import deserialize_state, serialize_state, state_to_document

__all__ = [
    "LEAKAGE_TOL",
    "Parity",
    "build",
    "cat",
    "circle_mean_photon",
    "circle_state",
    "coherent",
    "generalized_cat",
    "n_mode_cat",
    "parity_basis",
    "squeezed_vacuum",
    "suggest_dim",
    "support_residue",
    "two_mode_squeezed",
    "deserialize_state",
    "serialize_state",
    "state_to_document",
]
