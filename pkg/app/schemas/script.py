"""Syntax tree of the session language."""

from typing import List, Literal, Optional

from pydantic import BaseModel, Field


class Expr(BaseModel):
    """
    Expression node.

    ``call`` has a function ``name`` and ``args``; ``list`` has ``args``;
    ``name``, ``number`` and ``poly`` carry their source ``text``.
    """

    kind: Literal["call", "list", "name", "number", "poly"]
    text: str
    name: Optional[str] = None
    args: List["Expr"] = Field(default_factory=list)


class Statement(BaseModel):
    keyword: Literal["ring", "poly", "ideal", "module", "let", "show", "check"]
    line: int
    column: int
    source: str
    target: Optional[str] = None
    expr: Optional[Expr] = None
    ring_text: Optional[str] = None
    op: Optional[str] = None
    rhs: Optional[Expr] = None


class Script(BaseModel):
    statements: List[Statement] = Field(default_factory=list)

    def bound_names(self) -> List[str]:
        return [s.target for s in self.statements if s.target]
