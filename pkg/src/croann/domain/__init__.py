"""Domain layer - optimization engine, network model and operators."""
