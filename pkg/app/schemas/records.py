"""Output record schemas shared by the text and JSON emitters."""

from typing import Any, Dict, List, Literal, Optional, Tuple

from pydantic import BaseModel, Field

RecordKind = Literal[
    "ideal",
    "module",
    "betti",
    "verdict",
    "fingerprint",
    "cone-report",
    "value",
    "ring",
    "complexity",
    "operators",
    "report",
    "error",
]


class Bounds(BaseModel):
    resolution: int
    window: Tuple[int, int]


class Provenance(BaseModel):
    """Everything besides the script that determines a record."""

    characteristic: int
    order: str
    bounds: Bounds
    seed: Optional[int] = None


class CheckResult(BaseModel):
    expr: str
    passed: bool = Field(alias="pass")

    model_config = {"populate_by_name": True}


class OutputRecord(BaseModel):
    """
    One emitted result.

    ``payload`` holds plain JSON values only (strings for polynomials), so
    serialization is deterministic.
    """

    kind: RecordKind
    payload: Dict[str, Any]
    provenance: Provenance
    check: Optional[CheckResult] = None

    def to_json(self) -> str:
        return self.model_dump_json(by_alias=True)


class RunSummary(BaseModel):
    """Outcome of one script or pipeline run."""

    exit_code: int
    records: List[OutputRecord] = Field(default_factory=list)
    checks_total: int = 0
    checks_failed: int = 0
