"""Exception types shared across the package."""


class IsotypicaError(Exception):
    """Base class for all library errors."""


class FormatError(IsotypicaError):
    """Operands have incompatible formats (delta, d, k)."""


class ParseError(IsotypicaError):
    """A text or JSON artifact could not be parsed."""


class DimensionCapError(IsotypicaError):
    """A basis enumeration would exceed the configured dimension cap."""


class SeparationError(IsotypicaError):
    """No generator separates two isotypic types.

    This never happens for distinct dominant weights; raising it signals an
    implementation bug rather than bad input.
    """


class CircuitError(IsotypicaError):
    """A circuit is malformed or evaluates inconsistently with its format."""


class NotNormalizedError(IsotypicaError):
    """An operation requires an operator in ordered normal form."""


class BudgetError(IsotypicaError):
    """A symbolic expansion exceeded its configured term budget."""
