"""
Interpreter for parsed scripts.

A Session keeps the bound names and the current ring, evaluates statements in
order and collects OutputRecords. Failed checks are counted; library errors
stop the run.
"""

import re
from typing import Any, Callable, Dict, List, Optional

from sympy.polys.rings import PolyElement

from algebra.errors import AlgebraError, PolySyntaxError, ScriptError, UnknownVariableError
from algebra.homcore import (
    BettiTable,
    PresentedModule,
    annihilator,
    codim_profile,
    dagger,
    ext,
    fingerprint,
    hom,
    resolve,
    syzygy_module,
    tensor,
    tor,
    trace_and_stability,
    transpose_module,
)
from algebra.linkage import (
    ComplexityEstimate,
    certify_mcm,
    complexity,
    complexity_transfer_check,
    cone_report,
    eisenbud_operators,
    ferrand_cone,
    horizontal_link,
    link_ideal,
    link_over_ambient,
    link_via,
    mcm_approx,
    vanishing_verdict,
)
from algebra.linkage.verdicts import default_window
from algebra.polycore import OrderKind, RingSpec, format_poly, parse_poly, parse_ring
from algebra.stdbasis import (
    Ideal,
    colon_ideal,
    contained_in_power,
    intersect,
    is_gorenstein_artinian,
    krull_dim,
    mingens,
    normal_form,
    socle,
)
from utils.logging import get_logger

from ..core.config import Settings
from ..schemas.records import Bounds, CheckResult, OutputRecord, Provenance, RunSummary
from ..schemas.script import Expr, Script, Statement
from .emitter import PolyValue, error_record, make_record
from .script_parser import parse_expr, parse_script

logger = get_logger(__name__)

_ORDER_WORD = re.compile(r"\]\s*(local|ds|grevlex|global|dp)\b")
_IDENT = re.compile(r"[A-Za-z_][A-Za-z_0-9]*")

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_USAGE = 2
EXIT_PRECONDITION = 3


class StatementAbort(Exception):
    """Raised internally to stop after --fail-fast."""


class Session:
    """
    Evaluates scripts against one set of settings.

    Args:
        settings: Bounds, characteristic and seed
        fail_fast: Stop at the first failed check
    """

    def __init__(self, settings: Settings, fail_fast: bool = False):
        self.settings = settings
        self.fail_fast = fail_fast
        self.env: Dict[str, Any] = {}
        self.ring: Optional[RingSpec] = None
        self.records: List[OutputRecord] = []
        self.checks_total = 0
        self.checks_failed = 0
        self.functions: Dict[str, Callable[..., Any]] = {
            "ideal": self._fn_ideal,
            "std": lambda I: Ideal.of(self._ideal(I).ring, self._ideal(I).std),
            "nf": lambda f, I: self._poly_value(normal_form(self._poly(f), self._ideal(I)), self._ideal(I).ring),
            "colon": lambda I, J: colon_ideal(self._ideal(I), self._ideal(J)),
            "intersect": lambda I, J: intersect(self._ideal(I), self._ideal(J)),
            "mingens": lambda I: Ideal.of(self._ideal(I).ring, mingens(self._ideal(I))),
            "member": lambda f, I: self._ideal(I).contains(self._poly(f)),
            "subset": lambda I, J: self._ideal(J).contains_ideal(self._ideal(I)),
            "inpower": lambda I, k: contained_in_power(self._ideal(I), self._int(k)),
            "coker": self._fn_coker,
            "quotient": lambda I: PresentedModule.cyclic(self._ideal(I)),
            "free": lambda r: PresentedModule.free(self._require_ring(), self._int(r)),
            "residue": lambda: PresentedModule.residue_field(self._require_ring()),
            "resolve": lambda M, n=None: resolve(self._module(M), self._bound(n)),
            "betti": lambda M, n=None: resolve(self._module(M), self._bound(n)).betti(),
            "minpres": lambda M: self._module(M).minimal_presentation(),
            "transpose": lambda M: transpose_module(self._module(M)),
            "omega": lambda M: syzygy_module(self._module(M)).minimal_presentation(),
            "tensor": lambda M, N: tensor(self._module(M), self._module(N)).minimal_presentation(),
            "hom": lambda M, N: hom(self._module(M), self._module(N)).minimal_presentation(),
            "ext": lambda M, N, i: ext(self._module(M), self._module(N), self._int(i)).minimal_presentation(),
            "tor": lambda M, N, i: tor(self._module(M), self._module(N), self._int(i)).minimal_presentation(),
            "dagger": lambda M: dagger(self._module(M)),
            "ann": lambda M: annihilator(self._module(M)),
            "trace": lambda M: trace_and_stability(self._module(M)).trace,
            "stable": lambda M: trace_and_stability(self._module(M)).stable,
            "fingerprint": lambda M: self._fingerprint(self._module(M)),
            "length": self._fn_length,
            "krull": lambda R=None: krull_dim(R if isinstance(R, RingSpec) else self._require_ring()),
            "socle": lambda R=None: socle(R if isinstance(R, RingSpec) else self._require_ring()),
            "gorenstein": lambda R=None: is_gorenstein_artinian(R if isinstance(R, RingSpec) else self._require_ring()),
            "codim": lambda M: codim_profile(self._module(M)).g,
            "link": self._fn_link,
            "linkideal": lambda I, q: link_ideal(self._ideal(I), self._ideal(q)),
            "cone": self._fn_cone,
            "mcmapprox": self._fn_mcm,
            "cx": lambda M, n=None: complexity(self._module(M), self._bound(n)),
            "eisenbud": lambda M, n=None: eisenbud_operators(self._module(M), self._bound(n)),
            "verdict": self._fn_verdict,
            "transfer": lambda M, q, n=None: complexity_transfer_check(link_via(self._module(M), self._ideal(q)), self._bound(n)),
            "size": self._size,
        }

    # -- driving -----------------------------------------------------------------

    def provenance(self) -> Provenance:
        ring = self.ring
        return Provenance(
            characteristic=ring.characteristic if ring else self.settings.CHARACTERISTIC,
            order=ring.order.value if ring else self.settings.ORDER,
            bounds=Bounds(resolution=self.settings.RESOLUTION_BOUND, window=self.settings.WINDOW),
            seed=self.settings.SEED,
        )

    def run(self, script: Script) -> RunSummary:
        exit_code = EXIT_OK
        for stmt in script.statements:
            logger.info("line %d: %s", stmt.line, stmt.source)
            try:
                self.execute(stmt)
            except StatementAbort:
                break
            except ScriptError as exc:
                message = str(exc) if exc.line is not None else f"line {stmt.line}, column {stmt.column}: {exc}"
                self.records.append(error_record(message, self.provenance(), stmt.source))
                exit_code = EXIT_USAGE
                break
            except AlgebraError as exc:
                message = f"line {stmt.line}: {type(exc).__name__}: {exc}"
                self.records.append(error_record(message, self.provenance(), stmt.source))
                exit_code = EXIT_PRECONDITION
                break
        if exit_code == EXIT_OK and self.checks_failed:
            exit_code = EXIT_CHECK_FAILED
        return RunSummary(
            exit_code=exit_code,
            records=self.records,
            checks_total=self.checks_total,
            checks_failed=self.checks_failed,
        )

    def execute(self, stmt: Statement) -> None:
        if stmt.keyword == "ring":
            self.ring = self._declare_ring(stmt)
            self.env[stmt.target] = self.ring
            return
        if stmt.keyword == "show":
            self.records.append(make_record(self.evaluate(stmt.expr, stmt), self.provenance()))
            return
        if stmt.keyword == "check":
            self._check(stmt)
            return
        value = self.evaluate(stmt.expr, stmt)
        if stmt.keyword == "poly" and not isinstance(value, PolyValue):
            raise ScriptError(f"{stmt.target} is not a polynomial", stmt.line, stmt.column)
        if stmt.keyword == "ideal":
            value = self._ideal(value)
        if stmt.keyword == "module":
            value = self._module(value)
        self.env[stmt.target] = value

    def _declare_ring(self, stmt: Statement) -> RingSpec:
        text = stmt.ring_text
        head = _IDENT.match(text)
        if head and head.group(0) in self.env and isinstance(self.env[head.group(0)], RingSpec):
            base = self.env[head.group(0)]
            rest = text[head.end() :].strip()
            if not rest:
                return base
            if not rest.startswith("/"):
                raise ScriptError("expected 'RING / ideal'", stmt.line, stmt.column)
            saved, self.ring = self.ring, base
            try:
                ideal = self._ideal(self.evaluate(parse_expr(rest[1:], stmt.line, stmt.column), stmt))
            finally:
                self.ring = saved
            return base.quotient_by(ideal.gens)
        try:
            ring = parse_ring(text, self.settings.CHARACTERISTIC)
        except PolySyntaxError as exc:
            raise ScriptError(str(exc), stmt.line, stmt.column) from None
        if not _ORDER_WORD.search(text):
            ring = ring.with_order(OrderKind.parse(self.settings.ORDER))
        return ring

    def _check(self, stmt: Statement) -> None:
        self.checks_total += 1
        lhs = self.evaluate(stmt.expr, stmt)
        rhs = self.evaluate(stmt.rhs, stmt) if stmt.rhs is not None else None
        passed = bool(self._truth(lhs)) if stmt.op is None else self._compare(lhs, stmt.op, rhs)
        expr_text = stmt.source[len("check") :].strip()
        record = make_record(
            {"lhs": self._summary(lhs), "rhs": self._summary(rhs)} if stmt.op else self._summary(lhs),
            self.provenance(),
            check=CheckResult(expr=expr_text, passed=passed),
            kind="value",
        )
        self.records.append(record)
        if not passed:
            self.checks_failed += 1
            logger.warning("check failed at line %d: %s", stmt.line, expr_text)
            if self.fail_fast:
                raise StatementAbort()

    # -- evaluation ----------------------------------------------------------------

    def evaluate(self, expr: Expr, stmt: Statement) -> Any:
        try:
            return self._eval(expr)
        except (UnknownVariableError, PolySyntaxError) as exc:
            raise ScriptError(str(exc), stmt.line, stmt.column) from None
        except TypeError as exc:
            raise ScriptError(f"bad arguments in {expr.text!r}: {exc}", stmt.line, stmt.column) from None

    def _eval(self, expr: Expr) -> Any:
        if expr.kind == "number":
            return int(expr.text)
        if expr.kind == "list":
            return [self._eval(a) for a in expr.args]
        if expr.kind == "name":
            if expr.text in self.env:
                return self.env[expr.text]
            if self.ring is not None and expr.text in self.ring.vars:
                return self._poly_value(parse_poly(expr.text, self.ring), self.ring)
            return expr.text
        if expr.kind == "poly":
            ring = self._require_ring()
            return self._poly_value(parse_poly(self._substitute(expr.text), ring), ring)
        fn = self.functions.get(expr.name)
        if fn is None:
            raise ScriptError(f"unknown function {expr.name!r}")
        return fn(*[self._eval(a) for a in expr.args])

    def _substitute(self, text: str) -> str:
        """Inline bound polynomial names as parenthesized text."""

        def repl(match):
            value = self.env.get(match.group(0))
            if isinstance(value, PolyValue):
                return f"({format_poly(value.poly, value.ring)})"
            return match.group(0)

        return _IDENT.sub(repl, text)

    # -- coercions -----------------------------------------------------------------

    def _require_ring(self) -> RingSpec:
        if self.ring is None:
            raise ScriptError("no ring declared yet")
        return self.ring

    def _poly_value(self, f: PolyElement, ring: RingSpec) -> PolyValue:
        return PolyValue(poly=f, ring=ring)

    def _poly(self, value) -> PolyElement:
        if isinstance(value, PolyValue):
            return value.poly
        if isinstance(value, int):
            return self._require_ring().element(value)
        raise ScriptError(f"expected a polynomial, got {type(value).__name__}")

    def _int(self, value) -> int:
        if isinstance(value, bool) or not isinstance(value, int):
            raise ScriptError(f"expected an integer, got {value!r}")
        return value

    def _bound(self, value) -> int:
        return self.settings.RESOLUTION_BOUND if value is None else self._int(value)

    def _ideal(self, value) -> Ideal:
        if isinstance(value, Ideal):
            return value
        if isinstance(value, (PolyValue, int)):
            ring = value.ring if isinstance(value, PolyValue) else self._require_ring()
            return Ideal.of(ring, [self._poly(value)])
        if isinstance(value, list):
            return self._fn_ideal(*value)
        raise ScriptError(f"expected an ideal, got {type(value).__name__}")

    def _module(self, value) -> PresentedModule:
        if isinstance(value, PresentedModule):
            return value
        if isinstance(value, (Ideal, PolyValue)):
            return PresentedModule.cyclic(self._ideal(value))
        raise ScriptError(f"expected a module, got {type(value).__name__}")

    # -- functions with several shapes --------------------------------------------------

    def _fn_ideal(self, *args) -> Ideal:
        ring = self._require_ring()
        gens = []
        for a in args:
            if isinstance(a, Ideal):
                gens.extend(a.gens)
            elif isinstance(a, list):
                gens.extend(self._fn_ideal(*a).gens)
            else:
                gens.append(self._poly(a))
        return Ideal.of(ring, gens)

    def _fn_coker(self, *args) -> PresentedModule:
        """``coker(I)``, ``coker(f, g, ...)`` for ``A/(f, g)``, or ``coker([row], [row], ...)``."""
        if args and all(isinstance(a, list) for a in args):
            ring = self._require_ring()
            rows = [[self._poly(f) for f in row] for row in args]
            return PresentedModule.from_matrix(ring, rows)
        return PresentedModule.cyclic(self._fn_ideal(*args))

    def _fingerprint(self, module: PresentedModule):
        return fingerprint(
            module, betti_bound=self.settings.RESOLUTION_BOUND, filtration_bound=self.settings.FILTRATION_BOUND
        )

    def _fn_length(self, value=None) -> int:
        if value is None or isinstance(value, RingSpec):
            return PresentedModule.free(value or self._require_ring(), 1).length()
        return self._module(value).length()

    def _fn_link(self, M, q=None) -> PresentedModule:
        module = self._module(M)
        if q is None:
            return horizontal_link(module)
        return link_via(module, self._ideal(q)).N

    def _fn_cone(self, M, q, n=None):
        module, ideal = self._module(M), self._ideal(q)
        bound = 3 if n is None else self._int(n)
        cone = ferrand_cone(module, ideal, bound)
        return cone_report(cone, link=link_over_ambient(module, ideal))

    def _fn_mcm(self, M, q, n=None):
        bound = 3 if n is None else self._int(n)
        cone = ferrand_cone(self._module(M), self._ideal(q), bound)
        return certify_mcm(mcm_approx(cone), bound)

    def _fn_verdict(self, M, N, mode, window=None):
        module, partner = self._module(M), self._module(N)
        if window is None:
            window = default_window(module.ring, self.settings.RESOLUTION_BOUND)
        if not isinstance(window, list) or len(window) != 2:
            raise ScriptError("window must be a list [w0, w1]")
        return vanishing_verdict(module, partner, str(mode), (self._int(window[0]), self._int(window[1])))

    # -- checks ----------------------------------------------------------------------

    def _size(self, value) -> int:
        if isinstance(value, Ideal):
            return len(value.gens)
        if isinstance(value, PresentedModule):
            return value.num_generators()
        if isinstance(value, BettiTable):
            return len(value.betti)
        if isinstance(value, (list, tuple)):
            return len(value)
        raise ScriptError(f"{type(value).__name__} has no size")

    def _truth(self, value) -> bool:
        if isinstance(value, Ideal):
            return not value.is_zero
        if isinstance(value, PresentedModule):
            return not value.is_zero()
        return bool(value)

    def _summary(self, value) -> Any:
        if value is None or isinstance(value, (bool, int, str)):
            return value
        if isinstance(value, (Ideal, list)):
            return self._size(value)
        if isinstance(value, PolyValue):
            return format_poly(value.poly, value.ring)
        if isinstance(value, BettiTable):
            return value.betti
        return type(value).__name__

    def _compare(self, lhs, op: str, rhs) -> bool:
        if op == "in":
            if isinstance(rhs, Ideal):
                return rhs.contains(self._poly(lhs))
            if isinstance(rhs, list):
                left = self._size(lhs) if isinstance(lhs, (Ideal, PresentedModule)) else lhs
                return left in rhs
            raise ScriptError("'in' needs an ideal or a list on the right")
        left, right = lhs, rhs
        if isinstance(left, ComplexityEstimate) or isinstance(right, ComplexityEstimate):
            # complexities compare by class label; ">=3" is written as a string
            left, right = (
                v.cx_class.value if isinstance(v, ComplexityEstimate) else str(v) for v in (left, right)
            )
            if op not in ("==", "!="):
                return self._bad_op(op)
        elif isinstance(right, int) and not isinstance(left, (int, bool)):
            left = self._size(left)
        elif isinstance(left, int) and not isinstance(right, (int, bool)):
            right = self._size(right)
        elif isinstance(left, Ideal) and isinstance(right, Ideal):
            same = left.equals(right)
            return same if op == "==" else (not same if op == "!=" else self._bad_op(op))
        elif isinstance(left, PresentedModule) and isinstance(right, PresentedModule):
            same = self._fingerprint(left) == self._fingerprint(right)
            return same if op == "==" else (not same if op == "!=" else self._bad_op(op))
        elif isinstance(left, BettiTable) and isinstance(right, list):
            left = left.betti
        elif isinstance(left, PolyValue) and isinstance(right, PolyValue):
            left, right = format_poly(left.poly, left.ring), format_poly(right.poly, right.ring)
        ops = {
            "==": lambda a, b: a == b,
            "!=": lambda a, b: a != b,
            "<": lambda a, b: a < b,
            "<=": lambda a, b: a <= b,
            ">": lambda a, b: a > b,
            ">=": lambda a, b: a >= b,
        }
        try:
            return ops[op](left, right)
        except TypeError:
            raise ScriptError(f"cannot compare {type(lhs).__name__} {op} {type(rhs).__name__}") from None

    def _bad_op(self, op: str) -> bool:
        raise ScriptError(f"operator {op} is not defined for this comparison")


def run_source(source: str, settings: Settings, fail_fast: bool = False) -> RunSummary:
    """Parse and run a script; parse errors give an error record and exit code 2."""
    session = Session(settings, fail_fast=fail_fast)
    try:
        script = parse_script(source)
    except ScriptError as exc:
        session.records.append(error_record(str(exc), session.provenance()))
        return RunSummary(exit_code=EXIT_USAGE, records=session.records)
    return session.run(script)
