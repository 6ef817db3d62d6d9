"""Exception hierarchy shared by every module of the package."""


class DefhyperError(Exception):
    """Base class for all errors raised by defhyper."""


class RingMismatchError(DefhyperError, ValueError):
    """Operands live in different polynomial rings."""


class ArityError(DefhyperError, ValueError):
    """A point, map or block structure has the wrong number of coordinates."""


class ParseError(DefhyperError, ValueError):
    """Malformed polynomial expression or hypergraph spec file."""

    def __init__(self, message, line=1, column=1):
        super().__init__(f"line {line}, column {column}: {message}")
        self.message = message
        self.line = line
        self.column = column


class ResourceError(DefhyperError, RuntimeError):
    """A configured computation budget was exhausted."""


class GroebnerBudgetError(ResourceError):
    pass


class EnumerationBudgetError(ResourceError):
    pass


class CellBudgetError(ResourceError):
    pass


class SamplingError(ResourceError):
    """Could not find an F_p-rational point after the retry budget."""


class InvalidCompositeError(DefhyperError, ValueError):
    """The denominator of a composed rational map vanishes identically."""


class HypothesisViolation(DefhyperError, ValueError):
    """Inputs or results violate a stated hypothesis, e.g. repeated interpolation points."""


class NonDominantError(DefhyperError, ValueError):
    """The set is not dominant over its first factor."""
