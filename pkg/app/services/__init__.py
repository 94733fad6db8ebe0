"""
Script interpretation, output emission and the reproduction pipeline
"""

from .emitter import PolyValue, emit, emit_all, make_record, render_text
from .reproduction import run_reproduction
from .script_parser import parse_expr, parse_script, parse_statement, split_statements
from .session import (
    EXIT_CHECK_FAILED,
    EXIT_OK,
    EXIT_PRECONDITION,
    EXIT_USAGE,
    Session,
    run_source,
)

__all__ = [
    "EXIT_CHECK_FAILED",
    "EXIT_OK",
    "EXIT_PRECONDITION",
    "EXIT_USAGE",
    "PolyValue",
    "Session",
    "emit",
    "emit_all",
    "make_record",
    "parse_expr",
    "parse_script",
    "parse_statement",
    "render_text",
    "run_reproduction",
    "run_source",
    "split_statements",
]
