"""Error types for verification operations.

Mathematical verification failures are reported as values (verdicts and
outcomes). The exceptions below signal broken preconditions, configuration
problems, and I/O failures.
"""

from pathlib import Path


class VerifyError(Exception):
    """Base exception for tripartite-verify operations."""

    pass


class ConfigError(VerifyError):
    """Invalid or unreadable configuration."""

    def __init__(self, message: str) -> None:
        """Initialize with error message about the configuration."""
        super().__init__(f"invalid configuration: {message}")


class CutoffExceededError(VerifyError):
    """Exhaustive computation requested beyond its configured cutoff."""

    def __init__(self, operation: str, n: int, cutoff: int) -> None:
        """Initialize with the operation name, requested n and cutoff."""
        super().__init__(f"{operation}: n={n} exceeds the enumeration cutoff {cutoff}")
        self.operation = operation
        self.n = n
        self.cutoff = cutoff


class InvalidQueryError(VerifyError):
    """Arguments outside an operation's domain."""

    def __init__(self, message: str) -> None:
        """Initialize with error message about the query."""
        super().__init__(f"invalid query: {message}")


class EmptyAdmissibleSetError(VerifyError):
    """No admissible pair exists, so eta cannot be formed."""

    def __init__(self, n: int, delta: int) -> None:
        """Initialize with the gate's n and Delta."""
        super().__init__(f"no admissible pair for n={n}, delta={delta}")
        self.n = n
        self.delta = delta


class DelegatedSmallCaseError(VerifyError):
    """The escalation ladder does not handle this n; the small-case analysis does."""

    def __init__(self, n: int) -> None:
        """Initialize with the delegated n."""
        super().__init__(f"n={n} is handled by the small-case analysis, not the escalation")
        self.n = n


class UnsupportedRangeError(VerifyError):
    """Requested n outside the range an operation supports."""

    def __init__(self, message: str) -> None:
        """Initialize with error message about the range."""
        super().__init__(f"unsupported range: {message}")


class RetryLimitError(VerifyError):
    """A randomized generator exhausted its retry budget."""

    def __init__(self, attempts: int, message: str) -> None:
        """Initialize with the attempt count and a description."""
        super().__init__(f"gave up after {attempts} attempts: {message}")
        self.attempts = attempts


class InfeasibleGridError(VerifyError):
    """No grid composition satisfies the block capacity at this resolution."""

    def __init__(self, resolution: int) -> None:
        """Initialize with the grid resolution."""
        super().__init__(f"no feasible grid composition at resolution {resolution}")
        self.resolution = resolution


class InvalidColoringError(VerifyError):
    """A coloring violates the tripartite invariant."""

    def __init__(self, message: str) -> None:
        """Initialize with error message about the coloring."""
        super().__init__(f"invalid coloring: {message}")


class CertificateWriteError(VerifyError):
    """Writing a certificate file failed."""

    def __init__(self, path: Path, reason: str) -> None:
        """Initialize with the target path and the underlying reason."""
        super().__init__(f"cannot write certificate file {path}: {reason}")
        self.path = path


class AuditMismatchError(VerifyError):
    """An audited prune was not confirmed by the independent evaluator."""

    def __init__(self, reason: str, detail: str) -> None:
        """Initialize with the prune reason and the audited configuration."""
        super().__init__(f"prune audit mismatch for {reason!r}: {detail}")
        self.reason = reason
        self.detail = detail
