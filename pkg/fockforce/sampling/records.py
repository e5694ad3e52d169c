"""
Shot records and their CSV form.

The CSV starts with one comment line carrying scheme, seed and parameters,
followed by a header and one outcome per row:

    # scheme=parity seed=0 shots=3 theta=0.3
    shot,outcome
    0,1
    ...
"""

import io
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, Optional, TextIO, Union

import numpy as np
import pandas as pd

from fockforce.errors import DimensionMismatch


class ShotScheme(str, Enum):
    PARITY = "parity"
    HOMODYNE = "homodyne"


def format_number(value: float) -> str:
    """Fixed 9-significant-digit rendering used in every output file."""
    return f"{value:.9g}"


@dataclass(frozen=True)
class ShotRecord:
    """Outcomes of M shots: +1/-1 for parity readout, reals for homodyne."""

    scheme: ShotScheme
    shots: int
    seed: int
    outcomes: np.ndarray
    params: Dict[str, float] = field(default_factory=dict)

    def __post_init__(self):
        outcomes = np.array(self.outcomes)
        if outcomes.shape != (self.shots,):
            raise DimensionMismatch(f"{outcomes.size} outcomes recorded for {self.shots} shots")
        outcomes.setflags(write=False)
        object.__setattr__(self, "outcomes", outcomes)
        object.__setattr__(self, "scheme", ShotScheme(self.scheme))

    def header_line(self) -> str:
        parts = [f"scheme={self.scheme.value}", f"seed={self.seed}", f"shots={self.shots}"]
        parts += [f"{key}={format_number(value)}" for key, value in sorted(self.params.items())]
        return "# " + " ".join(parts)

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame({"shot": np.arange(self.shots), "outcome": self.outcomes})

    def to_csv(self, target: Optional[Union[str, TextIO]] = None) -> Optional[str]:
        """
        Write the record as CSV (LF line endings).

        Returns the CSV text when no target is given.
        """
        buffer = io.StringIO()
        buffer.write(self.header_line() + "\n")
        float_format = "%.9g" if self.scheme == ShotScheme.HOMODYNE else None
        self.to_frame().to_csv(buffer, index=False, lineterminator="\n", float_format=float_format)
        text = buffer.getvalue()
        if target is None:
            return text
        if isinstance(target, str):
            with open(target, "w", encoding="utf-8", newline="") as f:
                f.write(text)
        else:
            target.write(text)
        return None

    @classmethod
    def from_csv(cls, source: Union[str, TextIO]) -> "ShotRecord":
        """Read a record written by to_csv (path or open text stream)."""
        if isinstance(source, str):
            with open(source, encoding="utf-8") as f:
                text = f.read()
        else:
            text = source.read()
        first, _, body = text.partition("\n")
        meta = dict(item.split("=", 1) for item in first.lstrip("# ").split())
        frame = pd.read_csv(io.StringIO(body))
        scheme = ShotScheme(meta.pop("scheme"))
        seed = int(meta.pop("seed"))
        shots = int(meta.pop("shots"))
        params = {key: float(value) for key, value in meta.items()}
        return cls(scheme, shots, seed, frame["outcome"].to_numpy(), params)
