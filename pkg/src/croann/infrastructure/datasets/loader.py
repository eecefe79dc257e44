"""Delimited-text dataset ingestion."""

import csv
import hashlib
import logging
from pathlib import Path
from typing import Dict, List, Optional, Tuple

import numpy as np
from pydantic import BaseModel, Field

from croann.domain.dataset import RawDataset
from croann.domain.exceptions import (
    DatasetError,
    DatasetNotFoundError,
    MalformedRowError,
    UnknownLabelError,
)

logger = logging.getLogger(__name__)


class CsvSchema(BaseModel):
    """Column layout of a dataset file."""
    
    label_column: int = Field(default=-1, description="Label column index (negative counts from the end)")
    attribute_columns: Optional[Tuple[int, ...]] = Field(
        default=None, description="Attribute column indices (None = every other column)"
    )
    missing_marker: str = Field(default="?", description="Token marking a missing value")
    has_header: bool = Field(default=False, description="First non-blank row holds column names")
    labels: Optional[List[str]] = Field(
        default=None, description="Declared class labels in index order (None = first appearance)"
    )
    delimiter: str = Field(default=",", description="Field delimiter")
    
    model_config = {"frozen": True}


def file_sha256(path: Path) -> str:
    """Hex SHA-256 of a file."""
    digest = hashlib.sha256()
    with open(path, "rb") as f:
        for chunk in iter(lambda: f.read(65536), b""):
            digest.update(chunk)
    return digest.hexdigest()


def parse_csv(path: Path, schema: CsvSchema) -> RawDataset:
    """
    Parse a delimited dataset file.
    
    Rows with a missing attribute value are dropped and counted. Labels map
    to class indices in declared order, or first-appearance order when the
    schema declares none.
    
    Args:
        path: Dataset file
        schema: Column layout
    
    Returns:
        Parsed dataset
    
    Raises:
        DatasetNotFoundError: If the file does not exist
        MalformedRowError: If a row is too short or holds a non-numeric attribute
        UnknownLabelError: If a label is not among the declared labels
        DatasetError: If the file holds no data rows or fewer than two classes
    """
    if not path.exists():
        raise DatasetNotFoundError(str(path))
    
    class_index: Dict[str, int] = {name: i for i, name in enumerate(schema.labels or [])}
    header: Optional[List[str]] = None
    attribute_columns: Optional[List[int]] = None
    rows: List[List[float]] = []
    labels: List[int] = []
    dropped = 0
    
    try:
        with open(path, newline="") as f:
            for line_no, row in enumerate(csv.reader(f, delimiter=schema.delimiter), start=1):
                cells = [cell.strip() for cell in row]
                if not any(cells):
                    continue
                if schema.has_header and header is None:
                    header = cells
                    continue
                
                if attribute_columns is None:
                    attribute_columns = _resolve_columns(schema, len(cells), line_no)
                if (
                    max(attribute_columns) >= len(cells)
                    or not -len(cells) <= schema.label_column < len(cells)
                ):
                    raise MalformedRowError(line_no, f"too few fields ({len(cells)})")
                label_col = schema.label_column % len(cells)

                values = [cells[c] for c in attribute_columns]
                if any(v == schema.missing_marker or v == "" for v in values):
                    dropped += 1
                    continue
                try:
                    rows.append([float(v) for v in values])
                except ValueError as e:
                    raise MalformedRowError(line_no, f"non-numeric attribute ({e})")
                
                label = cells[label_col]
                if label not in class_index:
                    if schema.labels is not None:
                        raise UnknownLabelError(label, line_no)
                    class_index[label] = len(class_index)
                labels.append(class_index[label])
    except OSError as e:
        raise DatasetError(f"cannot read {path}: {e}")
    
    if not rows or attribute_columns is None:
        raise DatasetError(f"{path} holds no data rows")
    if len(class_index) < 2:
        raise DatasetError(f"{path} holds fewer than two classes")
    
    names = [header[c] if header and c < len(header) else f"a{c}" for c in attribute_columns]
    logger.info("Parsed %s: %d rows, %d dropped for missing values", path.name, len(rows), dropped)
    return RawDataset(
        attributes=np.asarray(rows, dtype=np.float64),
        labels=np.asarray(labels, dtype=np.int64),
        class_names=list(class_index),
        attribute_names=names,
        dropped_rows=dropped,
    )


def _resolve_columns(schema: CsvSchema, width: int, line_no: int) -> List[int]:
    """Attribute column indices for rows of the given width."""
    label_col = schema.label_column % width
    if schema.attribute_columns is None:
        columns = [c for c in range(width) if c != label_col]
    else:
        columns = list(schema.attribute_columns)
    if label_col in columns:
        raise MalformedRowError(line_no, f"label column {label_col} is also an attribute column")
    if not columns or min(columns) < 0:
        raise MalformedRowError(line_no, "attribute columns must be non-negative and non-empty")
    return columns
