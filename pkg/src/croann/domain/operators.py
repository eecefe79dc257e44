"""Solution-space operators over network weight structures."""

import math
from typing import Tuple

import numpy as np

from .exceptions import ContractViolation
from .models import NetworkConfig, OperatorParams
from .value_objects import SolutionStructure


def scale_to_unit(values: np.ndarray) -> np.ndarray:
    """Linearly map min to -1 and max to +1; a constant container maps to 0."""
    lo, hi = values.min(), values.max()
    if hi == lo:
        return np.zeros_like(values, dtype=np.float64)
    return 2.0 * (values - lo) / (hi - lo) - 1.0


def perturb_one(flat: np.ndarray, variance: float, rng: np.random.Generator) -> np.ndarray:
    """Copy of flat with one uniformly chosen element shifted by N(0, variance)."""
    out = flat.copy()
    i = int(rng.integers(out.shape[0]))
    out[i] += rng.normal(0.0, math.sqrt(variance))
    return out


def perturb_some(
    flat: np.ndarray, variance: float, prob: float, rng: np.random.Generator
) -> Tuple[np.ndarray, np.ndarray]:
    """Shift each element by N(0, variance) with probability prob; returns (copy, mask)."""
    mask = rng.random(flat.shape[0]) < prob
    noise = rng.normal(0.0, math.sqrt(variance), size=flat.shape[0])
    return np.where(mask, flat + noise, flat), mask


def select_elements(a: np.ndarray, b: np.ndarray, rng: np.random.Generator) -> np.ndarray:
    """Element-wise pick from a or b with equal probability."""
    if a.shape != b.shape:
        raise ContractViolation(f"parents differ in shape: {a.shape} vs {b.shape}")
    return np.where(rng.random(a.shape[0]) < 0.5, a, b)


def initial_gen(cfg: NetworkConfig, rng: np.random.Generator) -> SolutionStructure:
    """Random structure with each container scaled onto [-1, 1]."""
    flat = rng.random(cfg.size)
    template = SolutionStructure(n0=cfg.n0, n1=cfg.n1, n2=cfg.n2, flat=np.zeros(cfg.size))
    for container in template.containers():
        flat[container] = scale_to_unit(flat[container])
    return template.with_flat(flat)


def neighbour(
    s: SolutionStructure, params: OperatorParams, rng: np.random.Generator
) -> SolutionStructure:
    """Perturb exactly one element of the structure."""
    return s.with_flat(perturb_one(s.flat, params.gaussian_variance, rng))


def decomposition(
    s: SolutionStructure, params: OperatorParams, rng: np.random.Generator
) -> Tuple[SolutionStructure, SolutionStructure]:
    """
    Two independently and heavily perturbed copies of a structure.

    Each element of each copy is perturbed with probability
    decomp_perturb_prob; a copy left untouched falls back to neighbour so
    that both children always differ from the parent.
    """
    children = []
    for _ in range(2):
        flat, mask = perturb_some(s.flat, params.gaussian_variance, params.decomp_perturb_prob, rng)
        if not mask.any():
            flat = perturb_one(s.flat, params.gaussian_variance, rng)
        children.append(s.with_flat(flat))
    return children[0], children[1]


def synthesis(
    s1: SolutionStructure, s2: SolutionStructure, rng: np.random.Generator
) -> SolutionStructure:
    """Child whose every element comes from one of the two parents."""
    if not s1.same_shape(s2):
        raise ContractViolation("cannot synthesize structures of different dimensions")
    return s1.with_flat(select_elements(s1.flat, s2.flat, rng))


class NetworkOperators:
    """Operators bound to one network shape, in the form the optimizer calls them."""

    def __init__(self, cfg: NetworkConfig, params: OperatorParams):
        self.cfg = cfg
        self.params = params

    def generate(self, rng: np.random.Generator) -> SolutionStructure:
        return initial_gen(self.cfg, rng)

    def neighbour(self, s: SolutionStructure, rng: np.random.Generator) -> SolutionStructure:
        return neighbour(s, self.params, rng)

    def decompose(
        self, s: SolutionStructure, rng: np.random.Generator
    ) -> Tuple[SolutionStructure, SolutionStructure]:
        return decomposition(s, self.params, rng)

    def synthesize(
        self, s1: SolutionStructure, s2: SolutionStructure, rng: np.random.Generator
    ) -> SolutionStructure:
        return synthesis(s1, s2, rng)
