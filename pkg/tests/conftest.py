"""Shared fixtures."""

import logging
from collections import deque
from pathlib import Path
from typing import Callable, Iterable, Sequence

import numpy as np
import pytest

from croann.domain.dataset import RawDataset


class ScriptedRng:
    """Stand-in for numpy's Generator that replays fixed draws."""

    def __init__(
        self,
        random: Iterable[float] = (),
        uniform: Iterable[float] = (),
        integers: Iterable[int] = (),
        choice: Iterable[Sequence[int]] = (),
    ):
        self._random = deque(random)
        self._uniform = deque(uniform)
        self._integers = deque(integers)
        self._choice = deque(choice)

    def random(self) -> float:
        return self._random.popleft()

    def uniform(self, low: float, high: float) -> float:
        value = self._uniform.popleft()
        assert low <= value <= high
        return value

    def integers(self, n: int) -> int:
        value = self._integers.popleft()
        assert 0 <= value < n
        return value

    def choice(self, n: int, size: int, replace: bool) -> np.ndarray:
        value = np.asarray(self._choice.popleft())
        assert value.shape == (size,) and value.max() < n
        return value

    def exhausted(self) -> bool:
        return not (self._random or self._uniform or self._integers or self._choice)


@pytest.fixture
def scripted_rng() -> type:
    """The ScriptedRng class."""
    return ScriptedRng


def two_clusters(n_per_class: int, seed: int = 0, spread: float = 0.05) -> tuple:
    """Two well separated 2-D clusters around (0, 0) and (1, 1)."""
    rng = np.random.default_rng(seed)
    low = rng.uniform(0.0, spread, size=(n_per_class, 2))
    high = rng.uniform(1.0 - spread, 1.0, size=(n_per_class, 2))
    attributes = np.vstack([low, high])
    labels = np.array([0] * n_per_class + [1] * n_per_class)
    return attributes, labels


@pytest.fixture
def toy_raw() -> RawDataset:
    """Eight linearly separable points in two classes."""
    attributes, labels = two_clusters(4)
    return RawDataset(
        attributes=attributes,
        labels=labels,
        class_names=["low", "high"],
        attribute_names=["x", "y"],
    )


@pytest.fixture
def cluster_csv(tmp_path: Path) -> Path:
    """Forty-row two-class CSV with the label in the last column."""
    attributes, labels = two_clusters(20, seed=1)
    names = ["low", "high"]
    path = tmp_path / "clusters.data"
    path.write_text(
        "".join(f"{a!r},{b!r},{names[c]}\n" for (a, b), c in zip(attributes.tolist(), labels)),
        encoding="utf-8",
    )
    return path


@pytest.fixture
def write_config(tmp_path: Path) -> Callable[..., Path]:
    """Write a small, fast experiment config; keyword arguments replace dotted keys."""

    def write(data_path: Path, name: str = "run.conf", **overrides: str) -> Path:
        values = {
            "data.name": "clusters",
            "data.path": str(data_path),
            "data.split": "20,10,10",
            "cro.fe_limit": "400",
            "cro.pop_size": "10",
            "stop.window_size": "50",
            "stop.max_window_count": "300",
            "run.n_trials": "2",
            "run.base_seed": "7",
            "run.out_dir": str(tmp_path / "runs"),
        }
        values.update({k.replace("__", "."): v for k, v in overrides.items()})
        path = tmp_path / name
        path.write_text("".join(f"{k} = {v}\n" for k, v in values.items()), encoding="utf-8")
        return path

    return write


@pytest.fixture(autouse=True)
def _reset_package_logging():
    """Undo the CLI's logging setup so caplog sees package records."""
    yield
    logger = logging.getLogger("croann")
    logger.handlers.clear()
    logger.setLevel(logging.NOTSET)
    logger.propagate = True
