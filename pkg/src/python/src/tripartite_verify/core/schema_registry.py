"""Certificate schema loading for validation.

The one schema lives at ``schemas/certificate.schema.json`` under the
repository root. Its ``$id`` must name the current certificate major.minor.
"""

from functools import cache
import json
from pathlib import Path
from typing import Any

from referencing import Registry, Resource
from referencing.jsonschema import DRAFT202012

from .version import CERTIFICATE_VERSION

CERTIFICATE_SCHEMA = Path("schemas") / "certificate.schema.json"


def certificate_schema_id() -> str:
    """Return the ``$id`` expected for the current certificate version."""
    major, minor, *_ = CERTIFICATE_VERSION.split(".")
    return f"urn:tripartite-verify:certificate:{major}.{minor}"


def schema_path() -> Path:
    """Walk up from this file to the first directory holding the certificate schema.

    Raises:
        FileNotFoundError: If no parent directory holds the schema.
    """
    here = Path(__file__).resolve().parent
    for parent in [here, *here.parents]:
        candidate = parent / CERTIFICATE_SCHEMA
        if candidate.is_file():
            return candidate
    raise FileNotFoundError(f"{CERTIFICATE_SCHEMA} not found above {here}")


@cache
def get_schema() -> dict[str, Any]:
    """Load the certificate schema. Cached on first call.

    Raises:
        ValueError: If the schema's ``$id`` does not match the certificate version.
    """
    with schema_path().open("r", encoding="utf-8") as f:
        schema = json.load(f)
    expected = certificate_schema_id()
    if schema.get("$id") != expected:
        raise ValueError(f"certificate schema $id {schema.get('$id')!r}, expected {expected!r}")
    return schema


@cache
def get_registry() -> Registry:
    """Return a registry holding the certificate schema under its ``$id``."""
    schema = get_schema()
    resource = Resource.from_contents(schema, default_specification=DRAFT202012)
    return Registry().with_resource(schema["$id"], resource)
