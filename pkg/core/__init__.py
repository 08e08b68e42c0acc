"""
Core Module - Shared utilities

Cross-cutting concerns:
- Exceptions: Custom exception classes
- Logging: Logging configuration
"""

from .exceptions import (
    SurrogacyError,
    UserInputError,
    NumericalError,
    ConfigurationError,
    DataFormatError,
    NotPositiveDefinite,
)

__all__ = [
    "SurrogacyError",
    "UserInputError",
    "NumericalError",
    "ConfigurationError",
    "DataFormatError",
    "NotPositiveDefinite",
]
