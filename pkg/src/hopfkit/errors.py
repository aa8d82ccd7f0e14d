"""Exception taxonomy shared by every module."""


class HopfkitError(Exception):
    """Base class for all toolkit errors."""


class MixedTruncation(HopfkitError):
    """Binary scalar operation on operands with different truncation config."""


class EpsOverflow(HopfkitError):
    """A product produced an epsilon power outside the configured bound."""


class NotDivisible(HopfkitError):
    """Exact division by h**k requested on a term with h power below k."""


class SingularLimit(HopfkitError):
    """The eps -> 0 limit does not exist (a negative eps power survives)."""


class DegreeCapExceeded(HopfkitError):
    """A word grew past the configured degree cap."""


class SlotMismatch(HopfkitError):
    """Tensor operands with incompatible slot counts."""


class NonNilpotentArgument(HopfkitError):
    """Series argument without strictly positive h order; the series would not truncate."""


class NotInvertible(HopfkitError):
    """Series inverse requested for an element whose unit coefficient is not 1."""


class MalformedRelation(HopfkitError):
    """Relation or extra rule that cannot be compiled into a terminating rewrite rule."""


class FuelExhausted(HopfkitError):
    """Rewriting exceeded the step budget (backstop, not the termination argument)."""


class UnknownName(HopfkitError):
    """No built-in presentation or scaling under this name."""


class NoHopfData(HopfkitError):
    """Coalgebra operation on a presentation without Hopf data."""


class NotClosed(HopfkitError):
    """Subalgebra restriction leaks outside the chosen generator span."""

    def __init__(self, message: str, witness: str = ""):
        super().__init__(message)
        self.witness = witness


class MalformedScaling(HopfkitError):
    """Scaling map that is not linear or whose inverse cannot be solved."""


class ParseError(HopfkitError):
    """Expression or presentation-file syntax error with source position."""

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        loc = ""
        if line is not None:
            loc = f" at line {line}" if column is None else f" at line {line}, column {column}"
        super().__init__(message + loc)
        self.line = line
        self.column = column


class UnknownSymbol(HopfkitError):
    """Expression references a name the presentation does not declare."""


class ValidationError(HopfkitError):
    """Presentation file parsed but declares inconsistent data."""
