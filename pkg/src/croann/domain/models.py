"""Parameter models, dataset presets and published reference results."""

from enum import Enum
from typing import Dict, Tuple

from pydantic import BaseModel, Field, model_validator

from .exceptions import ConfigurationError


class CroParams(BaseModel):
    """Tunables of the chemical reaction optimizer."""

    pop_size: int = Field(default=20, gt=0, description="Initial population size")
    initial_ke: float = Field(default=100.0, ge=0.0, description="Initial molecular kinetic energy")
    buffer_init: float = Field(default=0.0, ge=0.0, description="Initial energy buffer size")
    mole_coll: float = Field(default=0.1, ge=0.0, le=1.0, description="Molecular collision rate")
    ke_loss_rate: float = Field(default=0.1, ge=0.0, le=1.0, description="Kinetic energy loss rate")
    decomp_threshold: int = Field(default=300, gt=0, description="Hits without improvement before decomposition")
    synth_threshold: float = Field(default=500.0, gt=0.0, description="KE at or below which two colliding molecules synthesize")
    fe_limit: int = Field(default=50_000, gt=0, description="Function evaluation limit")

    model_config = {"frozen": True, "extra": "forbid"}

    @model_validator(mode="after")
    def _check_budget(self) -> "CroParams":
        if self.pop_size > self.fe_limit:
            raise ValueError(
                f"population size {self.pop_size} exceeds the evaluation limit {self.fe_limit}"
            )
        return self


class NetworkConfig(BaseModel):
    """Single-hidden-layer network dimensions and fitness weights."""

    n0: int = Field(..., gt=0, description="Input neurons (attribute count)")
    n1: int = Field(default=5, gt=0, description="Hidden neurons")
    n2: int = Field(..., gt=0, description="Output neurons (class count)")
    alpha: float = Field(default=1.0, ge=0.0, le=1.0, description="Weight of the NMSE term")
    beta: float = Field(default=0.7, ge=0.0, le=1.0, description="Weight of the error-percentage term")

    model_config = {"frozen": True, "extra": "forbid"}

    @property
    def size(self) -> int:
        """Total number of weights and biases."""
        return self.n0 * self.n1 + self.n1 * self.n2 + self.n1 + self.n2


class OperatorParams(BaseModel):
    """Parameters of the solution-space operators."""

    gaussian_variance: float = Field(default=0.1, gt=0.0, description="Gaussian perturbation variance")
    decomp_perturb_prob: float = Field(
        default=0.5, ge=0.0, le=1.0, description="Per-element perturbation probability in decomposition"
    )

    model_config = {"frozen": True, "extra": "forbid"}


class StoppingConfig(BaseModel):
    """Sliding-window overfitness detection."""

    window_size: int = Field(default=100, gt=0, description="Training evaluations per window")
    max_window_count: int = Field(default=300, gt=0, description="Non-improving windows tolerated")

    model_config = {"frozen": True, "extra": "forbid"}


class Split(str, Enum):
    """Dataset portions."""
    TRAIN = "train"
    VALIDATION = "validation"
    TEST = "test"


class StopReason(str, Enum):
    """Why a training run ended."""
    FE_LIMIT = "fe_limit"
    OVERFITNESS = "overfitness"


class ReactionKind(str, Enum):
    """Elementary reactions."""
    ON_WALL = "on_wall"
    DECOMPOSITION = "decomposition"
    INTERMOLECULAR = "intermolecular"
    SYNTHESIS = "synthesis"

    @property
    def evaluations(self) -> int:
        """Objective evaluations one reaction of this kind consumes."""
        return 2 if self in (ReactionKind.DECOMPOSITION, ReactionKind.INTERMOLECULAR) else 1


class DatasetPreset(BaseModel):
    """Experiment settings for one benchmark dataset."""
    name: str
    filename: str
    url: str
    split: Tuple[int, int, int]
    fe_limit: int
    max_window_count: int
    label_column: int
    attribute_columns: Tuple[int, ...]
    missing_marker: str = "?"
    shortfall: str = "error"
    description: str


class ReferenceRow(BaseModel):
    """Published error percentages for one dataset portion."""
    mean: float
    std: float
    min: float
    max: float


UCI_BASE = "https://archive.ics.uci.edu/ml/machine-learning-databases"

# Benchmark presets
PRESETS: Dict[str, DatasetPreset] = {
    "iris": DatasetPreset(
        name="iris",
        filename="iris.data",
        url=f"{UCI_BASE}/iris/iris.data",
        split=(75, 37, 38),
        fe_limit=50_000,
        max_window_count=300,
        label_column=4,
        attribute_columns=(0, 1, 2, 3),
        description="Iris plants, 150 samples, 4 attributes, 3 classes.",
    ),
    "cancer": DatasetPreset(
        name="cancer",
        filename="breast-cancer-wisconsin.data",
        url=f"{UCI_BASE}/breast-cancer-wisconsin/breast-cancer-wisconsin.data",
        split=(349, 175, 175),
        fe_limit=50_000,
        max_window_count=300,
        label_column=10,
        attribute_columns=(1, 2, 3, 4, 5, 6, 7, 8, 9),
        shortfall="train_first",
        description="Wisconsin breast cancer, 699 samples with '?' gaps, 9 attributes, 2 classes.",
    ),
    "diabetes": DatasetPreset(
        name="diabetes",
        filename="pima-indians-diabetes.data",
        url="https://raw.githubusercontent.com/jbrownlee/Datasets/master/pima-indians-diabetes.data.csv",
        split=(384, 192, 192),
        fe_limit=172_800,
        max_window_count=500,
        label_column=8,
        attribute_columns=(0, 1, 2, 3, 4, 5, 6, 7),
        description="Pima Indians diabetes, 768 samples, 8 attributes, 2 classes.",
    ),
}

# Published CROANN rows (error %), keyed by preset name then portion
PUBLISHED_REFERENCE: Dict[str, Dict[Split, ReferenceRow]] = {
    "iris": {
        Split.TRAIN: ReferenceRow(mean=2.00, std=3.68, min=0.00, max=5.33),
        Split.VALIDATION: ReferenceRow(mean=4.32, std=2.16, min=2.70, max=8.10),
        Split.TEST: ReferenceRow(mean=1.31, std=1.77, min=0.00, max=7.89),
    },
    "cancer": {
        Split.TRAIN: ReferenceRow(mean=3.89, std=0.72, min=3.21, max=5.61),
        Split.VALIDATION: ReferenceRow(mean=3.54, std=0.42, min=2.86, max=4.00),
        Split.TEST: ReferenceRow(mean=1.06, std=0.67, min=0.00, max=2.29),
    },
    "diabetes": {
        Split.TRAIN: ReferenceRow(mean=16.55, std=2.73, min=15.89, max=18.23),
        Split.VALIDATION: ReferenceRow(mean=16.04, std=3.01, min=14.58, max=17.71),
        Split.TEST: ReferenceRow(mean=19.67, std=5.38, min=17.19, max=23.44),
    },
}


def get_preset(name: str) -> DatasetPreset:
    """Get benchmark preset by dataset name."""
    try:
        return PRESETS[name.lower()]
    except KeyError:
        choices = ", ".join(PRESETS)
        raise ConfigurationError(f"unknown dataset preset {name!r}; choose from {choices}", key="preset")
