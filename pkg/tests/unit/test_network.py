"""Unit tests for the network forward pass and fitness."""

import math

import numpy as np
import pytest

from croann.domain.exceptions import ContractViolation
from croann.domain.models import NetworkConfig
from croann.domain.network import classify, fitness, forward, nmse, percent_error
from croann.domain.value_objects import Portion, SolutionStructure


def sigmoid(x):
    return 1.0 / (1.0 + math.exp(-x))


def oracle_forward(s, pattern):
    """Scalar double loop over the weight matrices."""
    hidden = []
    for p in range(s.n1):
        total = s.b1[p]
        for m in range(s.n0):
            total += s.w1[m, p] * pattern[m]
        hidden.append(sigmoid(total))
    out = []
    for q in range(s.n2):
        total = s.b2[q]
        for p in range(s.n1):
            total += s.w2[p, q] * hidden[p]
        out.append(sigmoid(total))
    return out


def oracle_nmse(outputs, targets):
    n_samples, n2 = len(outputs), len(outputs[0])
    total = 0.0
    for i in range(n_samples):
        for q in range(n2):
            total += (targets[i][q] - outputs[i][q]) ** 2
    return 100.0 / (n2 * n_samples) * total


def oracle_percent(predictions, labels):
    correct = sum(1 for p, y in zip(predictions, labels) if p == y)
    return 100.0 * (1.0 - correct / len(labels))


def random_instance(rng):
    n0, n1, n2 = (int(v) for v in rng.integers(1, 6, size=3))
    size = n0 * n1 + n1 * n2 + n1 + n2
    s = SolutionStructure(n0=n0, n1=n1, n2=n2, flat=rng.normal(0.0, 2.0, size=size))
    n_samples = int(rng.integers(1, 12))
    labels = rng.integers(0, n2, size=n_samples)
    portion = Portion(
        inputs=rng.random((n_samples, n0)),
        targets=np.eye(n2)[labels],
        labels=labels,
    )
    return s, portion


def test_zero_network_outputs_half():
    """Test that an all-zero network outputs 0.5 everywhere."""
    s = SolutionStructure(n0=3, n1=4, n2=2, flat=np.zeros(3 * 4 + 4 * 2 + 4 + 2))

    assert np.array_equal(forward(s, np.array([0.3, -2.0, 7.0])), [0.5, 0.5])


def test_scalar_network():
    """Test a 1-1-1 network against the hand computation."""
    s = SolutionStructure.from_parts(np.array([[1.0]]), np.array([[1.0]]), np.zeros(1), np.zeros(1))

    assert forward(s, np.array([0.0]))[0] == pytest.approx(0.62246, abs=1e-5)


def test_forward_batch_matches_rows():
    """Test that a batch equals row-by-row evaluation."""
    rng = np.random.default_rng(4)
    s, portion = random_instance(rng)

    batch = forward(s, portion.inputs)
    rows = np.array([forward(s, x) for x in portion.inputs])

    np.testing.assert_allclose(batch, rows, rtol=1e-14)


def test_forward_width_mismatch():
    """Test that a wrong pattern width is a contract violation."""
    s = SolutionStructure(n0=3, n1=2, n2=2, flat=np.zeros(3 * 2 + 2 * 2 + 2 + 2))

    with pytest.raises(ContractViolation):
        forward(s, np.zeros(4))


def test_outputs_inside_unit_interval():
    """Test sigmoid range over random networks and patterns."""
    rng = np.random.default_rng(5)
    for _ in range(1000):
        s, portion = random_instance(rng)
        out = forward(s, portion.inputs)
        assert np.all(out > 0.0) and np.all(out < 1.0)


def test_nmse_examples():
    """Test nmse arithmetic."""
    targets = np.array([[1.0, 0.0], [0.0, 1.0]])

    assert nmse(targets, targets) == 0.0
    assert nmse(np.array([[0.0]]), np.array([[1.0]])) == 100.0
    assert nmse(np.full((2, 2), 0.5), targets) == pytest.approx(25.0)


def test_nmse_contract():
    """Test nmse shape and emptiness checks."""
    with pytest.raises(ContractViolation):
        nmse(np.zeros((2, 2)), np.zeros((2, 3)))
    with pytest.raises(ContractViolation):
        nmse(np.zeros((0, 2)), np.zeros((0, 2)))


def test_classify_ties_go_low():
    """Test argmax with the lowest-index tie-break."""
    assert classify(np.array([0.1, 0.9, 0.3])) == 1
    assert classify(np.array([0.5, 0.5])) == 0
    assert np.array_equal(classify(np.eye(4)), [0, 1, 2, 3])


def test_percent_error_examples():
    """Test percent_error arithmetic."""
    labels = np.array([0, 1, 2, 1])

    assert percent_error(labels, labels) == 0.0
    assert percent_error(np.array([0, 1, 2, 0]), labels) == pytest.approx(25.0)
    assert percent_error(np.array([1, 0, 0, 0]), labels) == 100.0
    with pytest.raises(ContractViolation):
        percent_error(np.array([]), np.array([]))


def test_fitness_is_weighted_sum():
    """Test fitness against its two components."""
    rng = np.random.default_rng(6)
    s, portion = random_instance(rng)
    cfg = NetworkConfig(n0=s.n0, n1=s.n1, n2=s.n2)
    out = forward(s, portion.inputs)

    expected = 1.0 * nmse(out, portion.targets) + 0.7 * percent_error(classify(out), portion.labels)

    assert fitness(s, portion, cfg) == pytest.approx(expected, rel=1e-15)


def test_fitness_pure_misclassification():
    """Test that alpha=0, beta=1 reduces fitness to the error percentage."""
    rng = np.random.default_rng(7)
    s, portion = random_instance(rng)
    cfg = NetworkConfig(n0=s.n0, n1=s.n1, n2=s.n2, alpha=0.0, beta=1.0)

    assert fitness(s, portion, cfg) == percent_error(classify(forward(s, portion.inputs)), portion.labels)


def test_kernels_match_naive_oracle():
    """Test forward, nmse, percent_error and fitness against scalar loops."""
    rng = np.random.default_rng(8)
    for _ in range(100):
        s, portion = random_instance(rng)
        cfg = NetworkConfig(n0=s.n0, n1=s.n1, n2=s.n2, alpha=float(rng.random()), beta=float(rng.random()))

        expected_out = [oracle_forward(s, x) for x in portion.inputs]
        out = forward(s, portion.inputs)
        np.testing.assert_allclose(out, expected_out, rtol=1e-12)

        expected_nmse = oracle_nmse(expected_out, portion.targets.tolist())
        assert nmse(out, portion.targets) == pytest.approx(expected_nmse, rel=1e-12)

        predictions = [max(range(s.n2), key=lambda q, row=row: (row[q], -q)) for row in expected_out]
        expected_percent = oracle_percent(predictions, portion.labels.tolist())
        assert percent_error(classify(out), portion.labels) == pytest.approx(expected_percent, rel=1e-12)

        expected_fitness = cfg.alpha * expected_nmse + cfg.beta * expected_percent
        assert fitness(s, portion, cfg) == pytest.approx(expected_fitness, rel=1e-12, abs=1e-12)


def test_structure_rejects_bad_flat():
    """Test the structure's length and finiteness checks."""
    with pytest.raises(ValueError):
        SolutionStructure(n0=2, n1=2, n2=2, flat=np.zeros(5))
    with pytest.raises(ValueError):
        SolutionStructure(n0=1, n1=1, n2=1, flat=np.array([0.0, np.nan, 0.0, 0.0]))
    with pytest.raises(ContractViolation):
        SolutionStructure.from_parts(np.zeros((2, 3)), np.zeros((2, 2)), np.zeros(3), np.zeros(2))


def test_structure_views():
    """Test container views of the flat vector."""
    w1 = np.arange(6.0).reshape(2, 3)
    w2 = np.arange(6.0, 12.0).reshape(3, 2)
    s = SolutionStructure.from_parts(w1, w2, np.array([12.0, 13.0, 14.0]), np.array([15.0, 16.0]))

    assert (s.n0, s.n1, s.n2) == (2, 3, 2)
    assert np.array_equal(s.w1, w1)
    assert np.array_equal(s.w2, w2)
    assert np.array_equal(s.b1, [12.0, 13.0, 14.0])
    assert np.array_equal(s.b2, [15.0, 16.0])
    assert not s.flat.flags.writeable
