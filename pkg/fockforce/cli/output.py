"""
Table and document writers shared by the CLI commands.

Every number is printed with 9 significant digits so repeated runs produce
byte-identical files.
"""

import json
import logging
import math
import os
import sys
from typing import Any, Dict, List, Optional, Sequence

import numpy as np
import pandas as pd

from fockforce import config
from fockforce.models.schemas import OutputFormat


logger = logging.getLogger(__name__)


def resolve_output_path(path: Optional[str]) -> Optional[str]:
    """Apply the FOCKFORCE_OUT_DIR override to an output path."""
    if path is None or not config.OUT_DIR:
        return path
    return os.path.join(config.OUT_DIR, os.path.basename(path))


def format_cell(value: Any) -> str:
    if isinstance(value, np.generic):
        value = value.item()
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return "" if math.isnan(value) else f"{value:.9g}"
    return str(value)


def round_floats(value: Any) -> Any:
    """Recursively round floats to 9 significant digits (NaN becomes None)."""
    if isinstance(value, np.generic):
        value = value.item()
    if isinstance(value, bool):
        return value
    if isinstance(value, float):
        return None if math.isnan(value) else float(f"{value:.9g}")
    if isinstance(value, dict):
        return {key: round_floats(item) for key, item in value.items()}
    if isinstance(value, (list, tuple)):
        return [round_floats(item) for item in value]
    return value


def table_to_csv(rows: Sequence[Dict[str, Any]], columns: Sequence[str]) -> str:
    """RFC-4180 CSV with a header row and LF line endings."""
    frame = pd.DataFrame(
        [[format_cell(row.get(column)) for column in columns] for row in rows],
        columns=list(columns),
    )
    return frame.to_csv(index=False, lineterminator="\n")


def document_to_json(document: Any) -> str:
    return json.dumps(round_floats(document), indent=2, sort_keys=False) + "\n"


def emit(text: str, path: Optional[str]) -> None:
    """Write text to path (UTF-8, no newline translation) or stdout."""
    path = resolve_output_path(path)
    if path is None:
        sys.stdout.write(text)
        return
    directory = os.path.dirname(path)
    if directory:
        os.makedirs(directory, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="") as f:
        f.write(text)
    logger.info(f"wrote {path}")


def emit_rows(
    rows: List[Dict[str, Any]],
    columns: Sequence[str],
    fmt: OutputFormat,
    path: Optional[str],
    document: Optional[Dict[str, Any]] = None,
) -> None:
    """
    Write rows as CSV, or as one JSON document.

    Args:
        rows: Table rows keyed by column name
        columns: Column order for CSV
        fmt: csv or json
        path: Output file (stdout when None)
        document: JSON document to write instead of {"rows": rows}
    """
    if OutputFormat(fmt) == OutputFormat.CSV:
        emit(table_to_csv(rows, columns), path)
    else:
        emit(document_to_json(document if document is not None else {"rows": rows}), path)
