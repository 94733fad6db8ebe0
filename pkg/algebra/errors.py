"""Exception hierarchy shared by the algebra packages.

Every error derives from ``ValueError`` so callers that only know about
bad-input errors keep working; the CLI maps the subclasses onto exit codes.
"""

from typing import Optional


class AlgebraError(ValueError):
    """Root of all library errors."""


class PolySyntaxError(AlgebraError):
    """Malformed polynomial text.

    Args:
        message: Human readable description
        position: 0-based character offset of the offending token
    """

    def __init__(self, message: str, position: Optional[int] = None):
        self.position = position
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)


class UnknownVariableError(PolySyntaxError):
    """Identifier that is not a variable of the ring."""


class NonLiteralDivisionError(PolySyntaxError):
    """Division whose divisor is not a numeric literal."""


class RingMismatchError(AlgebraError):
    """Operands live in different rings."""


class LengthMismatchError(AlgebraError):
    """Monomials or vectors of incompatible lengths."""


class PreconditionError(AlgebraError):
    """An operation was called outside its contract."""


class NotHomogeneousError(PreconditionError):
    pass


class InfiniteLengthError(PreconditionError):
    pass


class NotArtinianError(PreconditionError):
    pass


class NotGorensteinError(PreconditionError):
    pass


class NotCohenMacaulayError(PreconditionError):
    pass


class InconclusiveError(PreconditionError):
    """Bounded computation could not decide the question."""


class UnstableModuleError(PreconditionError):
    """Module has a free direct summand over the base ring."""


class AnnihilatorError(PreconditionError):
    """Ideal does not annihilate the module."""


class DecompositionError(PreconditionError):
    """Element could not be written in terms of the requested generators."""


class LiftError(PreconditionError):
    """Target is not in the image, or the lift needs a non-invertible unit."""


class ScriptError(AlgebraError):
    """Parse or evaluation failure in a session script.

    Args:
        message: Description of the problem
        line: 1-based line of the statement
        column: 1-based column, when known
    """

    def __init__(self, message: str, line: Optional[int] = None, column: Optional[int] = None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f"line {line}" + (f", column {column}" if column is not None else "")
            message = f"{where}: {message}"
        super().__init__(message)
