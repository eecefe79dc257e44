"""Raw datasets, normalization and the train/validation/test split."""

import logging
from typing import List, Tuple, Union

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator

from .exceptions import ContractViolation, SplitError
from .value_objects import Portion

logger = logging.getLogger(__name__)

SeedLike = Union[int, np.random.SeedSequence]
Counts = Tuple[int, int, int]


class RawDataset(BaseModel):
    """Parsed rows before splitting."""

    attributes: np.ndarray = Field(..., description="rows x n0 attribute values")
    labels: np.ndarray = Field(..., description="Class index per row")
    class_names: List[str] = Field(..., min_length=2, description="Label text per class index")
    attribute_names: List[str] = Field(..., description="Attribute column names")
    dropped_rows: int = Field(default=0, ge=0, description="Rows dropped for missing values")

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    @model_validator(mode="after")
    def _check_rows(self) -> "RawDataset":
        if self.attributes.ndim != 2 or self.attributes.shape[0] != self.labels.shape[0]:
            raise ContractViolation("attributes and labels differ in row count")
        if self.attributes.shape[1] != len(self.attribute_names):
            raise ContractViolation("attribute names do not match attribute columns")
        if self.labels.size and (self.labels.min() < 0 or self.labels.max() >= self.n_classes):
            raise ContractViolation("label index outside [0, n_classes)")
        return self

    @property
    def n_classes(self) -> int:
        return len(self.class_names)

    @property
    def n_attributes(self) -> int:
        return int(self.attributes.shape[1])

    def __len__(self) -> int:
        return int(self.attributes.shape[0])


class NormalizationStats(BaseModel):
    """Per-attribute min and max of the training portion."""

    minimum: np.ndarray
    maximum: np.ndarray

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    def apply(self, attributes: np.ndarray) -> np.ndarray:
        """Map training range onto [0, 1]; zero-range attributes map to 0."""
        span = self.maximum - self.minimum
        safe = np.where(span > 0, span, 1.0)
        return np.where(span > 0, (attributes - self.minimum) / safe, 0.0)


class DatasetSplit(BaseModel):
    """Training, validation and testing portions of one trial."""

    train: Portion
    validation: Portion
    test: Portion
    normalization: NormalizationStats
    indices: Tuple[np.ndarray, np.ndarray, np.ndarray] = Field(
        ..., description="Raw row indices of each portion"
    )

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)


def one_hot(labels: np.ndarray, n_classes: int) -> np.ndarray:
    """Rows with a single 1 at the label index."""
    return np.eye(n_classes, dtype=np.float64)[labels]


def reconcile_counts(counts: Counts, available: int) -> Counts:
    """
    Shrink split counts to the available rows, training portion first.

    Args:
        counts: Requested (train, validation, test) counts
        available: Rows in the dataset

    Returns:
        Counts summing to at most available
    """
    shortfall = sum(counts) - available
    if shortfall <= 0:
        return counts
    adjusted = list(counts)
    for i in range(3):
        take = min(shortfall, adjusted[i])
        adjusted[i] -= take
        shortfall -= take
    logger.warning(
        "Split counts %s exceed %d rows; using %s", counts, available, tuple(adjusted)
    )
    return adjusted[0], adjusted[1], adjusted[2]


def split_dataset(d: RawDataset, counts: Counts, seed: SeedLike) -> DatasetSplit:
    """
    Randomly partition rows and normalize with training statistics.

    Args:
        d: Parsed dataset
        counts: (n_train, n_val, n_test)
        seed: Seed of the random permutation

    Returns:
        Split with normalized attributes and one-hot targets

    Raises:
        SplitError: If the counts exceed the row count or a portion is empty
    """
    n_train, n_val, n_test = counts
    if min(counts) < 1:
        raise SplitError(f"every portion needs at least one row, got {counts}")
    if sum(counts) > len(d):
        raise SplitError(f"split counts {counts} exceed the {len(d)} available rows")

    order = np.random.default_rng(seed).permutation(len(d))
    parts = (
        order[:n_train],
        order[n_train:n_train + n_val],
        order[n_train + n_val:n_train + n_val + n_test],
    )
    train_attrs = d.attributes[parts[0]]
    stats = NormalizationStats(minimum=train_attrs.min(axis=0), maximum=train_attrs.max(axis=0))

    def portion(idx: np.ndarray) -> Portion:
        labels = d.labels[idx]
        return Portion(
            inputs=stats.apply(d.attributes[idx]),
            targets=one_hot(labels, d.n_classes),
            labels=labels,
        )

    return DatasetSplit(
        train=portion(parts[0]),
        validation=portion(parts[1]),
        test=portion(parts[2]),
        normalization=stats,
        indices=parts,
    )
