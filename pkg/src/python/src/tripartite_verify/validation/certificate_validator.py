"""Schema validation for certificate files.

A certificate file is JSON Lines: one stable record per n. Each line is parsed
on its own so a broken line is reported with its line number and does not hide
errors further down.
"""

from dataclasses import dataclass
import json
from pathlib import Path
from typing import Any

from jsonschema import Draft202012Validator
from jsonschema import ValidationError as JsonSchemaError

from tripartite_verify.core import get_registry, get_schema


@dataclass
class LineValidationResult:
    """Validation result for one line of a certificate file."""

    line: int
    ok: bool
    errors: list[str]


@dataclass
class ValidationSummary:
    """Summary of validation across every line of a file."""

    path: Path
    results: list[LineValidationResult]

    @property
    def ok(self) -> bool:
        """Return True if every line validated successfully."""
        return all(r.ok for r in self.results)

    @property
    def error_count(self) -> int:
        """Return the total number of errors."""
        return sum(len(r.errors) for r in self.results)


def _validator() -> Draft202012Validator:
    return Draft202012Validator(get_schema(), registry=get_registry())


def _format_schema_error(err: JsonSchemaError) -> str:
    """Format a jsonschema ValidationError with its instance path and schema path."""
    instance_parts = [str(p) for p in err.path]
    instance_path = ".".join(instance_parts) if instance_parts else "(root)"

    schema_parts = [str(p) for p in err.schema_path]
    schema_path = " -> ".join(schema_parts) if schema_parts else "(root)"

    return f"{err.message} (instance path: {instance_path}; schema path: {schema_path})"


def validate_record(record: Any) -> list[str]:
    """Return formatted schema errors for one decoded certificate record."""
    return [_format_schema_error(err) for err in _validator().iter_errors(record)]


def validate_certificate_path(path: Path) -> ValidationSummary:
    """Validate a JSONL certificate file line by line.

    Blank lines are skipped. A missing file yields a single failing result.
    """
    validator = _validator()
    results: list[LineValidationResult] = []
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        return ValidationSummary(path, [LineValidationResult(0, False, [f"cannot read: {exc}"])])

    for lineno, line in enumerate(text.splitlines(), start=1):
        if not line.strip():
            continue
        try:
            data = json.loads(line)
        except json.JSONDecodeError as exc:
            message = f"Invalid JSON at line {lineno}, column {exc.colno}: {exc.msg}"
            results.append(LineValidationResult(lineno, False, [message]))
            continue
        errors = [_format_schema_error(err) for err in validator.iter_errors(data)]
        results.append(LineValidationResult(lineno, not errors, errors))

    return ValidationSummary(path=path, results=results)
