"""Core - shared plumbing for every verification module.

- VerifyConfig: tunable constants loaded from YAML
- Schema Registry: certificate schema loading for validation
- Errors: the VerifyError hierarchy
"""

from .config import CONFIG_ENV_VAR, VerifyConfig, default_config, load_config
from .error import (
    AuditMismatchError,
    CertificateWriteError,
    ConfigError,
    CutoffExceededError,
    DelegatedSmallCaseError,
    EmptyAdmissibleSetError,
    InfeasibleGridError,
    InvalidColoringError,
    InvalidQueryError,
    RetryLimitError,
    UnsupportedRangeError,
    VerifyError,
)
from .schema_registry import certificate_schema_id, get_registry, get_schema, schema_path
from .version import CERTIFICATE_VERSION, __version__

__all__ = [
    # Version
    "CERTIFICATE_VERSION",
    "__version__",
    # Config
    "CONFIG_ENV_VAR",
    "VerifyConfig",
    "default_config",
    "load_config",
    # Schema Registry
    "certificate_schema_id",
    "get_schema",
    "get_registry",
    "schema_path",
    # Errors
    "VerifyError",
    "AuditMismatchError",
    "CertificateWriteError",
    "ConfigError",
    "CutoffExceededError",
    "DelegatedSmallCaseError",
    "EmptyAdmissibleSetError",
    "InfeasibleGridError",
    "InvalidColoringError",
    "InvalidQueryError",
    "RetryLimitError",
    "UnsupportedRangeError",
]
