"""Chemical Reaction Optimization for training feedforward neural networks."""

__version__ = "0.1.0"
