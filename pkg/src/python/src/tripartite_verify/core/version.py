"""Version constants for tripartite-verify.

The package version is read from the installed distribution, falling back to
the setuptools-scm ``_version.py`` in an uninstalled source tree.
"""

from importlib.metadata import PackageNotFoundError, version

try:
    __version__ = version("tripartite-verify")
except PackageNotFoundError:
    from .._version import __version__

CERTIFICATE_VERSION = "1.0.0"
