"""Tests for croann."""
