"""Single-hidden-layer feedforward network and its fitness."""

import numpy as np
from scipy.special import expit

from .exceptions import ContractViolation
from .models import NetworkConfig
from .value_objects import Portion, SolutionStructure


def forward(s: SolutionStructure, patterns: np.ndarray) -> np.ndarray:
    """
    Network outputs for one pattern or a batch of patterns.

    Both layers use the logistic sigmoid, so every output lies in (0, 1).

    Args:
        s: Weights and biases
        patterns: Vector of length n0, or matrix with one pattern per row

    Returns:
        Vector of length n2, or matrix with one output row per pattern

    Raises:
        ContractViolation: If the pattern width differs from n0
    """
    x = np.asarray(patterns, dtype=np.float64)
    if x.shape[-1] != s.n0:
        raise ContractViolation(f"pattern has {x.shape[-1]} attributes, network expects {s.n0}")
    hidden = expit(x @ s.w1 + s.b1)
    return expit(hidden @ s.w2 + s.b2)


def nmse(outputs: np.ndarray, targets: np.ndarray) -> float:
    """Normalized mean squared error scaled to 100 / (n2 * |S|)."""
    outputs = np.atleast_2d(outputs)
    targets = np.atleast_2d(targets)
    if outputs.shape != targets.shape:
        raise ContractViolation(f"outputs {outputs.shape} and targets {targets.shape} differ")
    if outputs.shape[0] == 0:
        raise ContractViolation("nmse of an empty dataset")
    n_samples, n2 = outputs.shape
    return float(100.0 / (n2 * n_samples) * np.sum((targets - outputs) ** 2))


def classify(outputs: np.ndarray) -> np.ndarray:
    """Class index per output row; ties go to the lowest index."""
    return np.argmax(outputs, axis=-1)


def percent_error(predictions: np.ndarray, labels: np.ndarray) -> float:
    """Percentage of misclassified samples."""
    predictions = np.asarray(predictions)
    labels = np.asarray(labels)
    if predictions.shape != labels.shape:
        raise ContractViolation(f"predictions {predictions.shape} and labels {labels.shape} differ")
    if predictions.size == 0:
        raise ContractViolation("percent error of an empty dataset")
    correct = int(np.count_nonzero(predictions == labels))
    return 100.0 * (1.0 - correct / predictions.size)


def fitness(s: SolutionStructure, portion: Portion, cfg: NetworkConfig) -> float:
    """alpha * nmse + beta * percent_error over a dataset portion."""
    if len(portion) == 0:
        raise ContractViolation("fitness of an empty dataset portion")
    outputs = forward(s, portion.inputs)
    return cfg.alpha * nmse(outputs, portion.targets) + cfg.beta * percent_error(
        classify(outputs), portion.labels
    )
