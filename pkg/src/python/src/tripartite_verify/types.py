"""Certificate record shapes.

Path: src/python/src/tripartite_verify/types.py
"""

from typing import Any, Literal, NotRequired, TypedDict

Method = Literal["escalation", "small-case", "trivial-d-zero", "trivial-dtilde-negative"]


class StepRecord(TypedDict):
    """One escalation step."""

    t: int
    delta: int | None
    p: int
    configs: int
    pruned: dict[str, int]
    max_tau_slack: int | None
    result: str


class CertificateRecord(TypedDict):
    """Stable per-n certificate line."""

    n: int
    method: Method
    ok: bool
    steps: list[StepRecord]
    notes: list[str]
    branches: NotRequired[dict[str, Any]]


class VolatileRecord(TypedDict):
    """Timing line kept apart from the stable certificate."""

    n: int
    ms: float
