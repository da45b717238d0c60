# src/python/tests/core/test_config_and_schemas.py

import pytest

from tripartite_verify.core import (
    CONFIG_ENV_VAR,
    ConfigError,
    VerifyConfig,
    certificate_schema_id,
    default_config,
    get_registry,
    get_schema,
    load_config,
    schema_path,
    schema_registry,
)


def test_packaged_defaults():
    """defaults.yaml matches the dataclass defaults."""
    assert default_config() == VerifyConfig()
    assert default_config().analytic_limit == 700


def test_overrides_are_type_checked():
    """Overrides keep the field's type and reject unknown keys."""
    cfg = default_config().with_overrides({"audit_every": 5, "highk_safety": 1})
    assert cfg.audit_every == 5
    assert cfg.highk_safety == 1.0
    for bad in ({"no_such_key": 1}, {"audit_every": "5"}, {"early_exit_monotone": 1}):
        with pytest.raises(ConfigError):
            default_config().with_overrides(bad)
    with pytest.raises(ConfigError):
        default_config().with_overrides({"log2_bits": -1})


def test_load_config_from_file(tmp_path):
    """A user file overrides single keys."""
    path = tmp_path / "cfg.yaml"
    path.write_text("brute_force_cutoff: 5\n", encoding="utf-8")
    cfg = load_config(path)
    assert cfg.brute_force_cutoff == 5
    assert cfg.full_max_cutoff == default_config().full_max_cutoff


def test_load_config_from_environment(tmp_path, monkeypatch):
    """The environment variable names the override file."""
    path = tmp_path / "env.yaml"
    path.write_text("audit_every: 3\n", encoding="utf-8")
    monkeypatch.setenv(CONFIG_ENV_VAR, str(path))
    assert load_config().audit_every == 3
    monkeypatch.delenv(CONFIG_ENV_VAR)
    assert load_config() == default_config()


@pytest.mark.parametrize("text", ["[1, 2]\n", "key: [unclosed\n"])
def test_load_config_rejects_bad_yaml(tmp_path, text):
    """Non-mapping or unparsable files are configuration errors."""
    path = tmp_path / "bad.yaml"
    path.write_text(text, encoding="utf-8")
    with pytest.raises(ConfigError):
        load_config(path)


def test_empty_file_means_defaults(tmp_path):
    """An empty override file changes nothing."""
    path = tmp_path / "empty.yaml"
    path.write_text("", encoding="utf-8")
    assert load_config(path) == default_config()


def test_certificate_schema_loads():
    """The certificate schema is found above the package and registered under its $id."""
    assert schema_path().name == "certificate.schema.json"
    schema = get_schema()
    assert schema["$id"] == certificate_schema_id() == "urn:tripartite-verify:certificate:1.0"
    assert get_registry().contents(schema["$id"]) == schema


def test_certificate_schema_rejects_other_version(monkeypatch):
    """A schema whose $id names another certificate version is refused."""
    monkeypatch.setattr(schema_registry, "CERTIFICATE_VERSION", "2.0.0")
    get_schema.cache_clear()
    try:
        with pytest.raises(ValueError):
            get_schema()
    finally:
        get_schema.cache_clear()
