"""Domain value objects - immutable data structures."""

from typing import Dict, Optional, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator

from .exceptions import ContractViolation
from .models import ReactionKind, StopReason


class SolutionStructure(BaseModel):
    """
    Weights and biases of one single-hidden-layer network.

    The four containers (w1, w2, b1, b2) are stored back to back in one
    read-only flat vector; the properties return reshaped views of it.
    """

    n0: int = Field(..., gt=0, description="Input neurons")
    n1: int = Field(..., gt=0, description="Hidden neurons")
    n2: int = Field(..., gt=0, description="Output neurons")
    flat: np.ndarray = Field(..., description="w1, w2, b1, b2 concatenated in that order")

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    @model_validator(mode="after")
    def _check_flat(self) -> "SolutionStructure":
        expected = self.n0 * self.n1 + self.n1 * self.n2 + self.n1 + self.n2
        if self.flat.ndim != 1 or self.flat.shape[0] != expected:
            raise ContractViolation(
                f"flat vector has shape {self.flat.shape}, expected ({expected},)"
            )
        if not np.all(np.isfinite(self.flat)):
            raise ContractViolation("solution structure contains non-finite values")
        self.flat.flags.writeable = False
        return self

    @classmethod
    def from_parts(
        cls, w1: np.ndarray, w2: np.ndarray, b1: np.ndarray, b2: np.ndarray
    ) -> "SolutionStructure":
        """Build a structure from its four containers."""
        w1, w2 = np.atleast_2d(w1), np.atleast_2d(w2)
        b1, b2 = np.ravel(b1), np.ravel(b2)
        n0, n1 = w1.shape
        if w2.shape[0] != n1 or b1.shape[0] != n1 or b2.shape[0] != w2.shape[1]:
            raise ContractViolation(
                f"inconsistent container shapes w1={w1.shape} w2={w2.shape} "
                f"b1={b1.shape} b2={b2.shape}"
            )
        flat = np.concatenate([w1.ravel(), w2.ravel(), b1, b2]).astype(np.float64)
        return cls(n0=n0, n1=n1, n2=w2.shape[1], flat=flat)

    def with_flat(self, flat: np.ndarray) -> "SolutionStructure":
        """Same dimensions, new element values."""
        return SolutionStructure(n0=self.n0, n1=self.n1, n2=self.n2, flat=flat)

    @property
    def bounds(self) -> Tuple[int, int, int, int, int]:
        """Offsets of the containers inside the flat vector."""
        a = self.n0 * self.n1
        b = a + self.n1 * self.n2
        c = b + self.n1
        return 0, a, b, c, c + self.n2

    @property
    def w1(self) -> np.ndarray:
        start, end = self.bounds[0], self.bounds[1]
        return self.flat[start:end].reshape(self.n0, self.n1)

    @property
    def w2(self) -> np.ndarray:
        start, end = self.bounds[1], self.bounds[2]
        return self.flat[start:end].reshape(self.n1, self.n2)

    @property
    def b1(self) -> np.ndarray:
        return self.flat[self.bounds[2]:self.bounds[3]]

    @property
    def b2(self) -> np.ndarray:
        return self.flat[self.bounds[3]:self.bounds[4]]

    def containers(self) -> Tuple[slice, slice, slice, slice]:
        """Slices of w1, w2, b1, b2 in the flat vector."""
        o = self.bounds
        return slice(o[0], o[1]), slice(o[1], o[2]), slice(o[2], o[3]), slice(o[3], o[4])

    def same_shape(self, other: "SolutionStructure") -> bool:
        """True when both structures describe the same network dimensions."""
        return (self.n0, self.n1, self.n2) == (other.n0, other.n1, other.n2)


class ProgressRecord(BaseModel):
    """Snapshot emitted at every validation window."""

    trial: int = Field(..., description="Trial index")
    fe_count: int = Field(..., description="Training evaluations consumed")
    train_fitness: float = Field(..., description="Global best training fitness")
    val_fitness: float = Field(..., description="Validation fitness of the global best")

    model_config = {"frozen": True}


class SplitStatistics(BaseModel):
    """Aggregate error percentages for one dataset portion."""

    mean: float
    std: float
    min: float
    max: float

    model_config = {"frozen": True}


class TrialReport(BaseModel):
    """Outcome of one training run."""

    trial: int = Field(..., description="Trial index")
    seed: int = Field(..., description="Seed of this trial")
    train_error: float = Field(..., ge=0.0, le=100.0, description="Training error %")
    validation_error: float = Field(..., ge=0.0, le=100.0, description="Validation error %")
    test_error: float = Field(..., ge=0.0, le=100.0, description="Testing error %")
    fe_used: int = Field(..., ge=0, description="Training evaluations consumed")
    stop_reason: StopReason = Field(..., description="Why the run ended")
    train_fitness: float = Field(..., description="Training fitness of the final network")
    attempted: Dict[ReactionKind, int] = Field(
        default_factory=lambda: {kind: 0 for kind in ReactionKind},
        description="Reactions attempted per kind",
    )
    accepted: Dict[ReactionKind, int] = Field(
        default_factory=lambda: {kind: 0 for kind in ReactionKind},
        description="Reactions accepted per kind",
    )

    model_config = {"frozen": True}

    def acceptance_rate(self, kind: ReactionKind) -> Optional[float]:
        """Accepted over attempted for one kind; None if never attempted."""
        attempted = self.attempted.get(kind, 0)
        if attempted == 0:
            return None
        return self.accepted.get(kind, 0) / attempted


class Portion(BaseModel):
    """One dataset portion: normalized inputs, one-hot targets and labels."""

    inputs: np.ndarray = Field(..., description="|S| x n0 normalized attributes")
    targets: np.ndarray = Field(..., description="|S| x n2 one-hot targets")
    labels: np.ndarray = Field(..., description="|S| class indices")

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    @model_validator(mode="after")
    def _check_rows(self) -> "Portion":
        n = self.inputs.shape[0]
        if self.targets.shape[0] != n or self.labels.shape[0] != n:
            raise ContractViolation("inputs, targets and labels differ in row count")
        return self

    def __len__(self) -> int:
        return int(self.inputs.shape[0])


class SweepPoint(BaseModel):
    """Test error of one swept parameter value."""

    parameter: str = Field(..., description="Swept parameter name")
    value: str = Field(..., description="Value exactly as given on the command line")
    test_mean: float = Field(..., description="Mean testing error %")
    test_std: float = Field(..., description="Sample standard deviation of the testing error %")
    accept_rates: Dict[ReactionKind, float] = Field(
        default_factory=dict,
        description="Mean per-trial acceptance rate per reaction kind (NaN if never attempted)",
    )

    model_config = {"frozen": True}
