"""Complexity classes read from the growth of Betti numbers."""

from enum import Enum
from typing import Dict, List

from pydantic import BaseModel

from ..errors import PreconditionError
from ..homcore.complexes import BettiTable, resolve
from ..homcore.modules import PresentedModule

WINDOW_LABEL = "window evidence"
CERTIFIED_LABEL = "certified"


class CxClass(str, Enum):
    ZERO = "0"
    ONE = "1"
    TWO = "2"
    AT_LEAST_THREE = ">=3"
    INCONCLUSIVE = "inconclusive"


class ComplexityEstimate(BaseModel):
    """Complexity class with the Betti table it was read from."""

    betti: BettiTable
    cx_class: CxClass
    label: str
    evidence: Dict[str, List[int]]

    @property
    def value(self):
        """Integer class, or ``None`` for ``>=3`` and inconclusive."""
        if self.cx_class in (CxClass.ZERO, CxClass.ONE, CxClass.TWO):
            return int(self.cx_class.value)
        return None


def _two_periodic(values: List[int]) -> bool:
    return all(values[i] == values[i + 2] for i in range(len(values) - 2))


def classify_betti(table: BettiTable, start: int = 2) -> ComplexityEstimate:
    """
    Classify ``beta_start..beta_bound``.

    * 0: some Betti number vanishes (a syzygy became zero), certified;
    * 1: the last four values repeat with period two;
    * 2: the last four first differences are positive and repeat with period two;
    * >=3: the last second differences are all positive;
    * otherwise inconclusive.
    """
    window = table.window(start, table.bound)
    diffs = [b - a for a, b in zip(window, window[1:])]
    second = [b - a for a, b in zip(diffs, diffs[1:])]
    evidence = {"window": window, "first_differences": diffs, "second_differences": second}

    def estimate(cx: CxClass, label: str = WINDOW_LABEL) -> ComplexityEstimate:
        return ComplexityEstimate(betti=table, cx_class=cx, label=label, evidence=evidence)

    if table.terminated or any(b == 0 for b in table.betti):
        return estimate(CxClass.ZERO, CERTIFIED_LABEL)
    if _two_periodic(window[-4:]):
        return estimate(CxClass.ONE)
    tail = diffs[-4:]
    if all(d > 0 for d in tail) and _two_periodic(tail):
        return estimate(CxClass.TWO)
    if second[-3:] and all(s > 0 for s in second[-3:]):
        return estimate(CxClass.AT_LEAST_THREE)
    return estimate(CxClass.INCONCLUSIVE)


def complexity(module: PresentedModule, bound: int) -> ComplexityEstimate:
    """
    Complexity evidence from the minimal resolution over ``[2, bound]``.

    Raises:
        PreconditionError: ``bound < 6``
    """
    if bound < 6:
        raise PreconditionError("complexity needs a resolution bound of at least 6")
    return classify_betti(resolve(module, bound).betti())
