# src/python/tests/core/test_version.py

from importlib.metadata import PackageNotFoundError, version

import tripartite_verify
from tripartite_verify import _version, core


def _installed_version():
    try:
        return version("tripartite-verify")
    except PackageNotFoundError:
        return _version.__version__


def test_version_has_a_single_source():
    """Package and core report the distribution version, or the scm file without an install."""
    assert tripartite_verify.__version__ == core.__version__ == _installed_version()


def test_certificate_version_is_semver():
    """The certificate format version is major.minor.patch."""
    parts = tripartite_verify.CERTIFICATE_VERSION.split(".")
    assert len(parts) == 3
    assert all(part.isdigit() for part in parts)
