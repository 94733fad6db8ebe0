"""
The counterexample pipeline.

Over ``P = k[x,y,z]`` with a local order and ``u = x^2 + y^2 + z^2``:

* ``I = (x^7, y^7) : (xy + yz + xz)`` in ``R = P/(u)`` is published with 12
  minimal generators, all in ``n^6``;
* ``Q = mingens(I) + (u)`` in ``P`` is published with 12 or 13 minimal
  generators and sits in ``(x^8, y^8, u) ⊆ (x^7, y^7, u) ⊆ Q ⊆ (x^2, y^2, u)``.

The count checks carry the computed value, so a run that does not reproduce
the published counts reports them as failed checks.

The deep stage builds ``A = P/(u, x^8)`` and ``M = A/(x, y^2)``, links ``M``
through ``Q`` and through ``(y^2)``, and compares complexities. It runs in a
child process and is reported as skipped when it exceeds its time budget.
"""

import multiprocessing
import queue
import time
from typing import Any, Dict, List, Optional

from algebra.errors import AlgebraError
from algebra.homcore import PresentedModule
from algebra.linkage import complexity, complexity_transfer_check, link_via
from algebra.polycore import FieldSpec, OrderKind, RingSpec, format_poly
from algebra.stdbasis import Ideal, colon_ideal, contained_in_power, mingens
from utils.logging import get_logger

from ..core.config import Settings, build_settings
from ..schemas.records import Bounds, CheckResult, OutputRecord, Provenance, RunSummary
from .emitter import error_record, make_record
from .session import EXIT_CHECK_FAILED, EXIT_OK, EXIT_PRECONDITION

logger = get_logger(__name__)

DEEP_WINDOW = (2, 6)
POLL_SECONDS = 0.5


class Pipeline:
    """Collects records and check outcomes for one reproduction run."""

    def __init__(self, settings: Settings):
        self.settings = settings
        self.records: List[OutputRecord] = []
        self.failed = 0
        self.total = 0

    def provenance(self, window=None) -> Provenance:
        return Provenance(
            characteristic=self.settings.CHARACTERISTIC,
            order=OrderKind.LOCAL.value,
            bounds=Bounds(resolution=self.settings.RESOLUTION_BOUND, window=window or self.settings.WINDOW),
            seed=self.settings.SEED,
        )

    def show(self, value: Any, window=None) -> None:
        self.records.append(make_record(value, self.provenance(window)))

    def check(self, expr: str, value: Any, passed: bool, window=None) -> bool:
        self.total += 1
        if not passed:
            self.failed += 1
            logger.warning("repro check failed: %s (computed %r)", expr, value)
        record = make_record(value, self.provenance(window), check=CheckResult(expr=expr, passed=passed))
        self.records.append(record)
        return passed


def base_ring(characteristic: int) -> RingSpec:
    return RingSpec.create(FieldSpec.from_characteristic(characteristic), ("x", "y", "z"), OrderKind.LOCAL)


def construct(pipeline: Pipeline) -> Ideal:
    """Shallow stage; returns the lifted ideal ``Q`` of ``P``."""
    P = base_ring(pipeline.settings.CHARACTERISTIC)
    x, y, z = P.gens
    u = x**2 + y**2 + z**2
    R = P.quotient_by([u])
    pipeline.show(R)

    I = colon_ideal(Ideal.of(R, [x**7, y**7]), Ideal.of(R, [x * y + y * z + x * z]))
    gens = mingens(I)
    minimal = Ideal.of(R, gens)
    pipeline.show(minimal)
    pipeline.check("size(mingens(I)) == 12", len(gens), len(gens) == 12)
    in_power = contained_in_power(minimal, 6)
    pipeline.check("inpower(I, 6)", in_power, in_power)

    lifted = Ideal.of(P, list(gens) + [u])
    lifted_size = len(mingens(lifted))
    pipeline.check("size(mingens(Q)) in [12, 13]", lifted_size, lifted_size in (12, 13))

    chain = [
        ("(x^8, y^8, u)", Ideal.of(P, [x**8, y**8, u])),
        ("(x^7, y^7, u)", Ideal.of(P, [x**7, y**7, u])),
        ("Q", lifted),
        ("(x^2, y^2, u)", Ideal.of(P, [x**2, y**2, u])),
    ]
    for (small_name, small), (big_name, big) in zip(chain, chain[1:]):
        pipeline.check(f"subset({small_name}, {big_name})", True, big.contains_ideal(small))
    return lifted


def deep_stage(characteristic: int, lifted_gens: List[str]) -> List[Dict[str, Any]]:
    """
    Heavy stage, run in a child process; returns serialized records.

    Args:
        characteristic: Field characteristic
        lifted_gens: Generators of ``Q`` as text in ``x, y, z``
    """
    settings = build_settings(CHARACTERISTIC=characteristic, WINDOW=DEEP_WINDOW, RESOLUTION_BOUND=DEEP_WINDOW[1])
    pipeline = Pipeline(settings)
    P = base_ring(characteristic)
    x, y, z = P.gens
    u = x**2 + y**2 + z**2
    A = P.quotient_by([u, x**8])
    pipeline.show(A, DEEP_WINDOW)
    M = PresentedModule.cyclic(Ideal.of(A, [x, y**2]))

    through_q = link_via(M, Ideal.of(A, [A.element(g) for g in lifted_gens]))
    through_ci = link_via(M, Ideal.of(A, [y**2]))
    bound = DEEP_WINDOW[1]
    for name, datum in (("Q", through_q), ("(y^2)", through_ci)):
        report = complexity_transfer_check(datum, bound)
        pipeline.show(report, DEEP_WINDOW)
        logger.info("linked via %s: regime %s", name, report.regime.value)

    cx_N = complexity(through_q.N_over_A, bound)
    cx_L = complexity(through_ci.N_over_A, bound)
    pipeline.check("cx(link(M, Q)) == 2", cx_N.cx_class.value, cx_N.cx_class.value == "2", DEEP_WINDOW)
    pipeline.check("cx(link(M, y^2)) == 1", cx_L.cx_class.value, cx_L.cx_class.value == "1", DEEP_WINDOW)
    return [r.model_dump(mode="json", by_alias=True) for r in pipeline.records]


def _deep_worker(characteristic: int, lifted_gens: List[str], out: "multiprocessing.Queue") -> None:
    try:
        out.put(("ok", deep_stage(characteristic, lifted_gens)))
    except Exception as exc:
        out.put(("error", f"{type(exc).__name__}: {exc}"))


def _await_worker(worker: multiprocessing.Process, out: "multiprocessing.Queue", timeout: Optional[float]):
    """The worker's message, ``None`` on timeout; a worker that dies silently is an error."""
    deadline = None if timeout is None else time.monotonic() + timeout
    while True:
        try:
            return out.get(timeout=POLL_SECONDS)
        except queue.Empty:
            pass
        if not worker.is_alive():
            try:
                return out.get(timeout=POLL_SECONDS)
            except queue.Empty:
                return "error", f"deep stage worker exited with code {worker.exitcode}"
        if deadline is not None and time.monotonic() >= deadline:
            return None


def run_deep(pipeline: Pipeline, lifted: Ideal, timeout: Optional[float]) -> Optional[str]:
    """Run the deep stage with a time budget; returns an error message or None."""
    gens = [format_poly(g, lifted.ring) for g in lifted.gens]
    out: multiprocessing.Queue = multiprocessing.Queue()
    worker = multiprocessing.Process(
        target=_deep_worker, args=(pipeline.settings.CHARACTERISTIC, gens, out), daemon=True
    )
    worker.start()
    message = _await_worker(worker, out, timeout)
    if message is None:
        worker.terminate()
        worker.join()
        logger.warning("deep stage exceeded %s seconds; skipped", timeout)
        pipeline.records.append(
            make_record({"stage": "deep", "status": "skipped", "timeout_seconds": timeout}, pipeline.provenance(DEEP_WINDOW), kind="report")
        )
        return None
    worker.join()
    status, payload = message
    if status == "error":
        return payload
    for data in payload:
        record = OutputRecord.model_validate(data)
        pipeline.records.append(record)
        if record.check is not None:
            pipeline.total += 1
            pipeline.failed += 0 if record.check.passed else 1
    return None


def run_reproduction(settings: Settings, deep: bool = False) -> RunSummary:
    pipeline = Pipeline(settings)
    try:
        lifted = construct(pipeline)
        error = run_deep(pipeline, lifted, settings.DEEP_TIMEOUT_SECONDS) if deep else None
    except AlgebraError as exc:
        error = f"{type(exc).__name__}: {exc}"
    if error:
        pipeline.records.append(error_record(error, pipeline.provenance()))
        exit_code = EXIT_PRECONDITION
    else:
        exit_code = EXIT_CHECK_FAILED if pipeline.failed else EXIT_OK
    return RunSummary(
        exit_code=exit_code,
        records=pipeline.records,
        checks_total=pipeline.total,
        checks_failed=pipeline.failed,
    )
