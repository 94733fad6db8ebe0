"""Turn library results into OutputRecords and serialize them deterministically."""

import json
from dataclasses import dataclass
from typing import Any, Dict, Iterable, List, Optional, Tuple

from pydantic import BaseModel
from sympy.polys.rings import PolyElement

from algebra.homcore import BettiTable, Fingerprint, PresentedModule, Resolution
from algebra.linkage import CohomOperators, ComplexityEstimate, ConeReport, IdealLink, Verdict
from algebra.polycore import RingSpec, format_poly
from algebra.stdbasis import Ideal

from ..schemas.records import CheckResult, OutputRecord, Provenance


@dataclass(frozen=True)
class PolyValue:
    """A polynomial together with the ring used to print it."""

    poly: PolyElement
    ring: RingSpec


def _matrix_rows(module: PresentedModule) -> List[List[str]]:
    ring = module.ring
    return [[format_poly(f, ring) for f in row] for row in module.presentation.rows]


def plain(value: Any) -> Any:
    """JSON-ready rendering of a value that may appear inside a payload."""
    if isinstance(value, PolyValue):
        return format_poly(value.poly, value.ring)
    if isinstance(value, Ideal):
        return [format_poly(g, value.ring) for g in value.gens]
    if isinstance(value, PresentedModule):
        return {"generators": value.rank, "relations": _matrix_rows(value)}
    if isinstance(value, RingSpec):
        return str(value)
    if isinstance(value, BaseModel):
        return value.model_dump(mode="json")
    if isinstance(value, (list, tuple)):
        return [plain(v) for v in value]
    if isinstance(value, dict):
        return {str(k): plain(v) for k, v in value.items()}
    return value


def describe(value: Any) -> Tuple[str, Dict[str, Any]]:
    """Record kind and payload for a result."""
    if isinstance(value, RingSpec):
        return "ring", {"ring": str(value), "variables": list(value.vars)}
    if isinstance(value, Ideal):
        return "ideal", {"ring": str(value.ring), "gens": plain(value), "size": len(value.gens)}
    if isinstance(value, PresentedModule):
        return "module", {"ring": str(value.ring), "generators": value.rank, "presentation": _matrix_rows(value)}
    if isinstance(value, BettiTable):
        return "betti", {"betti": value.betti, "terminated": value.terminated}
    if isinstance(value, Resolution):
        diffs = {
            str(i): [[format_poly(f, value.ring) for f in row] for row in value.differential(i).rows]
            for i in range(1, value.bound + 1)
            if value.rank(i)
        }
        return "report", {"betti": value.betti().betti, "differentials": diffs}
    if isinstance(value, Verdict):
        return "verdict", value.model_dump(mode="json")
    if isinstance(value, Fingerprint):
        return "fingerprint", value.model_dump(mode="json")
    if isinstance(value, ConeReport):
        return "cone-report", value.model_dump(mode="json")
    if isinstance(value, ComplexityEstimate):
        return "complexity", {
            "class": value.cx_class.value,
            "label": value.label,
            "betti": value.betti.betti,
            "evidence": value.evidence,
        }
    if isinstance(value, CohomOperators):
        degrees = sorted({i for ops in value.operators for i in ops})
        return "operators", {
            "count": value.count,
            "identity_holds": value.identity_holds,
            "chain_maps": value.chain_maps,
            "isomorphism": {
                str(j): {str(i): value.is_isomorphism(j, i) for i in degrees} for j in range(value.count)
            },
        }
    if isinstance(value, IdealLink):
        return "report", {
            "linked": plain(value.linked),
            "double_colon_returns": value.double_colon_returns,
        }
    if isinstance(value, BaseModel):
        return "report", value.model_dump(mode="json")
    return "value", {"value": plain(value)}


def make_record(
    value: Any,
    provenance: Provenance,
    check: Optional[CheckResult] = None,
    kind: Optional[str] = None,
) -> OutputRecord:
    found_kind, payload = describe(value)
    return OutputRecord(kind=kind or found_kind, payload=payload, provenance=provenance, check=check)


def error_record(message: str, provenance: Provenance, statement: Optional[str] = None) -> OutputRecord:
    payload = {"error": message}
    if statement:
        payload["statement"] = statement
    return OutputRecord(kind="error", payload=payload, provenance=provenance)


def _betti_text(betti: List[int]) -> List[str]:
    width = max([len(str(b)) for b in betti] + [len(str(len(betti) - 1))]) + 1
    head = "  i:" + "".join(str(i).rjust(width) for i in range(len(betti)))
    body = "  b:" + "".join(str(b).rjust(width) for b in betti)
    return [head, body]


def render_text(record: OutputRecord) -> str:
    """Stable, human oriented rendering; the JSON form carries the same data."""
    payload = record.payload
    lines: List[str]
    if record.kind == "betti":
        lines = [f"[betti]{' (terminated)' if payload.get('terminated') else ''}"] + _betti_text(payload["betti"])
    elif record.kind == "ideal":
        lines = [f"[ideal] ({', '.join(payload['gens'])})"]
    elif record.kind == "module":
        lines = [f"[module] {payload['generators']} generators over {payload['ring']}"]
        lines += ["  [" + ", ".join(row) + "]" for row in payload["presentation"]]
    elif record.kind == "value":
        lines = [f"[value] {json.dumps(payload['value'], sort_keys=True)}"]
    elif record.kind == "error":
        lines = [f"[error] {payload['error']}"]
    else:
        lines = [f"[{record.kind}]"] + [f"  {k}: {json.dumps(v, sort_keys=True)}" for k, v in sorted(payload.items())]
    if record.check is not None:
        lines.append(f"  check {record.check.expr}: {'PASS' if record.check.passed else 'FAIL'}")
    return "\n".join(lines)


def emit(record: OutputRecord, fmt: str = "text") -> bytes:
    """Serialize one record; identical records give identical bytes."""
    if fmt == "json":
        data = json.loads(record.to_json())
        return (json.dumps(data, sort_keys=True, separators=(",", ":")) + "\n").encode("utf-8")
    return (render_text(record) + "\n").encode("utf-8")


def emit_all(records: Iterable[OutputRecord], fmt: str = "text") -> bytes:
    return b"".join(emit(r, fmt) for r in records)
