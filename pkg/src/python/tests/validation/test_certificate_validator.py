# src/python/tests/validation/test_certificate_validator.py

import json

from tripartite_verify.validation import validate_certificate_path, validate_record


def _make_record(**overrides):
    record = {
        "n": 7,
        "method": "escalation",
        "ok": True,
        "steps": [
            {
                "t": 1,
                "delta": 0,
                "p": 0,
                "configs": 12,
                "pruned": {"overline_m_a": 10},
                "max_tau_slack": None,
                "result": "verified",
            }
        ],
        "notes": [],
    }
    record.update(overrides)
    return record


def test_valid_record():
    """A well-formed escalation record passes."""
    assert validate_record(_make_record()) == []


def test_invalid_records():
    """Unknown methods, extra keys and bad step results are reported with paths."""
    assert validate_record(_make_record(method="guess"))
    assert validate_record(_make_record(extra=1))
    bad_step = _make_record()
    bad_step["steps"][0]["result"] = "maybe"
    errors = validate_record(bad_step)
    assert errors
    assert "steps.0.result" in errors[0]


def test_file_validation_line_by_line(tmp_path):
    """One broken line does not hide the others."""
    path = tmp_path / "cert.jsonl"
    lines = [
        json.dumps(_make_record()),
        "",
        "{not json",
        json.dumps(_make_record(n=2)),
    ]
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    summary = validate_certificate_path(path)
    assert [r.line for r in summary.results] == [1, 3, 4]
    assert [r.ok for r in summary.results] == [True, False, False]
    assert summary.results[1].errors[0].startswith("Invalid JSON at line 3, column 2")
    assert not summary.ok
    assert summary.error_count == 2


def test_missing_file(tmp_path):
    """A missing file yields one failing result."""
    summary = validate_certificate_path(tmp_path / "absent.jsonl")
    assert not summary.ok
    assert summary.results[0].line == 0
