"""Certificate validation helpers."""

from .certificate_validator import (
    LineValidationResult,
    ValidationSummary,
    validate_certificate_path,
    validate_record,
)

__all__ = [
    "LineValidationResult",
    "ValidationSummary",
    "validate_certificate_path",
    "validate_record",
]
