"""Pydantic schemas for scripts and output records."""

from .records import Bounds, CheckResult, OutputRecord, Provenance, RecordKind, RunSummary
from .script import Expr, Script, Statement

__all__ = [
    "Bounds",
    "CheckResult",
    "Expr",
    "OutputRecord",
    "Provenance",
    "RecordKind",
    "RunSummary",
    "Script",
    "Statement",
]
