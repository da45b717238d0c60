# src/python/tests/cli/test_cli.py

import json

import pytest
from typer.testing import CliRunner

from tripartite_verify import __version__
from tripartite_verify.cli.cli import app

runner = CliRunner()


def _write_config(tmp_path, text):
    path = tmp_path / "override.yaml"
    path.write_text(text, encoding="utf-8")
    return path


def test_version():
    """The version command prints the package version."""
    result = runner.invoke(app, ["version"])
    assert result.exit_code == 0
    assert result.stdout.strip() == __version__


def test_tables_csv():
    """g3 from n = 1 as CSV."""
    result = runner.invoke(app, ["tables", "--fn", "g3", "--max", "6"])
    assert result.exit_code == 0
    assert result.stdout == "n,g3\n1,0\n2,0\n3,1\n4,2\n5,4\n6,8\n"


def test_tables_unknown_function():
    """An unknown table name is a usage error."""
    result = runner.invoke(app, ["tables", "--fn", "nope"])
    assert result.exit_code == 2


def test_verify_writes_certificates(tmp_path):
    """A short range succeeds and leaves a stable and a volatile file."""
    out = tmp_path / "cert.jsonl"
    result = runner.invoke(app, ["verify", "--from", "3", "--to", "7", "--out", str(out)])
    assert result.exit_code == 0, result.stdout
    assert "escalation: 2" in result.stdout
    assert "trivial-d-zero: 3" in result.stdout
    assert out.is_file()
    assert (tmp_path / "cert.volatile.jsonl").is_file()

    check = runner.invoke(app, ["validate-certificates", str(out)])
    assert check.exit_code == 0
    assert "All 5 records validated successfully." in check.stdout


def test_verify_refuses_analytic_range():
    """n >= 700 is handled by the analytic argument, not by this tool."""
    result = runner.invoke(app, ["verify", "--from", "690", "--to", "700"])
    assert result.exit_code == 2


def test_config_override_lowers_limit(tmp_path):
    """A user file can shrink the computational range."""
    path = _write_config(tmp_path, "analytic_limit: 8\n")
    ok = runner.invoke(app, ["--config", str(path), "verify", "--from", "3", "--to", "7"])
    assert ok.exit_code == 0
    refused = runner.invoke(app, ["--config", str(path), "verify", "--from", "3", "--to", "8"])
    assert refused.exit_code == 2


@pytest.mark.parametrize(
    "args",
    [
        ["--log-level", "LOUD", "version"],
        ["--config", "does-not-exist.yaml", "version"],
    ],
)
def test_bad_global_options(args):
    """Unknown log levels and missing config files exit with 2."""
    assert runner.invoke(app, args).exit_code == 2


def test_bad_config_key(tmp_path):
    """Unknown keys are rejected before any command runs."""
    path = _write_config(tmp_path, "no_such_key: 1\n")
    assert runner.invoke(app, ["--config", str(path), "version"]).exit_code == 2


def test_identities_with_small_ranges(tmp_path):
    """Every family reports ok."""
    path = _write_config(tmp_path, "full_max_cutoff: 20\n")
    result = runner.invoke(
        app,
        [
            "--config",
            str(path),
            "identities",
            "--recursion-max",
            "500",
            "--nice-max",
            "500",
            "--kmax",
            "4",
        ],
    )
    assert result.exit_code == 0, result.stdout
    assert "all identities hold" in result.stdout


def test_smallcase():
    """n = 13 succeeds with a JSON record; n = 15 is not a small case."""
    result = runner.invoke(app, ["smallcase", "--n", "13"])
    assert result.exit_code == 0
    record = json.loads(result.stdout[: result.stdout.rindex("}") + 1])
    assert record["verdict"] == "contradiction-established"
    assert runner.invoke(app, ["smallcase", "--n", "15"]).exit_code == 2


def test_brute():
    """Agreement at n = 5; n = 7 exceeds the cutoff."""
    result = runner.invoke(app, ["brute", "--n", "5"])
    assert result.exit_code == 0
    assert "brute force 4, g_3(n) 4" in result.stdout
    assert runner.invoke(app, ["brute", "--n", "7"]).exit_code == 2


def test_fcheck_and_props():
    """Seeded randomized checks pass."""
    assert (
        runner.invoke(
            app, ["fcheck", "--trials", "25", "--resolution", "16", "--seed", "7"]
        ).exit_code
        == 0
    )
    assert runner.invoke(app, ["props", "--trials", "20", "--seed", "3"]).exit_code == 0


def test_highk():
    """k = 7 and 8 satisfy the condition."""
    result = runner.invoke(app, ["highk", "--kmax", "8"])
    assert result.exit_code == 0, result.stdout
    assert "condition holds for 7 <= k <= 8" in result.stdout


def test_validate_certificates_reports_errors(tmp_path):
    """A schema violation exits 1 and names the line."""
    path = tmp_path / "bad.jsonl"
    path.write_text('{"n": 2, "method": "guess"}\n', encoding="utf-8")
    result = runner.invoke(app, ["validate-certificates", str(path)])
    assert result.exit_code == 1
    assert "[ERROR] line 1" in result.stdout
