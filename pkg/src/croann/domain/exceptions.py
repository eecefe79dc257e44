"""Domain-level exceptions."""

from typing import Optional


class CroannError(Exception):
    """Base exception for domain errors."""
    pass


class ConfigurationError(CroannError):
    """Raised when parameters or a configuration file are invalid."""
    
    def __init__(self, message: str, key: Optional[str] = None):
        self.key = key
        super().__init__(f"{key}: {message}" if key else message)


class ContractViolation(CroannError, ValueError):
    """Raised when a numeric kernel receives mismatched or empty input."""
    pass


class DatasetError(CroannError):
    """Base exception for dataset problems."""
    pass


class MalformedRowError(DatasetError):
    """Raised when a CSV row does not match the schema."""
    
    def __init__(self, line: int, reason: str):
        self.line = line
        super().__init__(f"line {line}: {reason}")


class UnknownLabelError(DatasetError):
    """Raised when a row carries a label outside the declared class list."""
    
    def __init__(self, label: str, line: int):
        self.label = label
        self.line = line
        super().__init__(f"line {line}: unknown label {label!r}")


class SplitError(DatasetError):
    """Raised when requested split counts exceed the available rows."""
    pass


class ReportError(CroannError):
    """Raised when a run directory holds nothing to report."""
    pass


class ResultStoreError(CroannError):
    """Raised when run outputs cannot be written or read."""
    pass


class DatasetNotFoundError(DatasetError):
    """Raised when a dataset file does not exist."""
    
    def __init__(self, path: str):
        self.path = path
        super().__init__(f"dataset file not found: {path}")
