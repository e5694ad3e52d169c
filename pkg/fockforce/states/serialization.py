"""
JSON round-tripping of constructed states.

Document layout: {family, params, dims, amps: [[re, im], ...], mean_photon}.
"""

import logging
from typing import Optional, Union

import numpy as np

from fockforce.fock import FockVector, MultiModeState, as_multimode
from fockforce.models.schemas import StateDocument, StateFamily


logger = logging.getLogger(__name__)


def state_to_document(
    state: Union[FockVector, MultiModeState],
    family: Optional[StateFamily] = None,
) -> StateDocument:
    multi = as_multimode(state)
    return StateDocument(
        family=family.tag.value if family is not None else None,
        params=family.params() if family is not None else {},
        dims=list(multi.mode_dims),
        amps=[(float(a.real), float(a.imag)) for a in multi.amps],
        mean_photon=multi.mean_photon,
    )


def serialize_state(
    state: Union[FockVector, MultiModeState],
    family: Optional[StateFamily] = None,
) -> str:
    """Serialize a state (and optionally the family it came from) to JSON."""
    return state_to_document(state, family).model_dump_json()


def deserialize_state(payload: str) -> Union[FockVector, MultiModeState]:
    """
    Rebuild a state from serialize_state output.

    One-mode documents come back as FockVector, others as MultiModeState.

    Raises:
        pydantic.ValidationError: malformed document
    """
    doc = StateDocument.model_validate_json(payload)
    amps = np.array([complex(re, im) for re, im in doc.amps], dtype=np.complex128)
    logger.debug(f"deserialized {doc.family or 'unnamed'} state with dims {doc.dims}")
    if len(doc.dims) == 1:
        return FockVector(doc.dims[0], amps, mean_photon=doc.mean_photon)
    return MultiModeState(tuple(doc.dims), amps, mean_photon=doc.mean_photon)
