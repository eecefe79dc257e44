"""Infrastructure layer - dataset files, run configuration and result storage."""
