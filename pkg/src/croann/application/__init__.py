"""Application layer - training, sweep and report use cases."""
