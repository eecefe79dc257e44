"""Dataset file readers."""
