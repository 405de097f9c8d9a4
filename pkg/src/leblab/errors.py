"""Exception taxonomy shared by all modules.

CLI exit codes: DomainError -> 2, numeric stalls -> 3, I/O -> 4.
"""


class LeblabError(Exception):
    """Base class for all library errors."""


class DomainError(LeblabError):
    """Input outside the validated parameter domain."""


class ToleranceUnreachable(LeblabError):
    """A certified truncation cannot meet the requested tolerance within the term cap."""


class PrecisionLoss(LeblabError):
    """Cancellation exhausted the guard digits of the extended-precision path."""


class NoSignChange(LeblabError):
    """A root bracket shows no sign change; carries the offending bracket index."""

    def __init__(self, index, message=None):
        self.index = index
        super().__init__(message or f"no sign change on bracket {index}")


class PhaseNotMonotone(LeblabError):
    """Numerical phase derivative went nonpositive where monotonicity was required."""


class QuadratureStall(LeblabError):
    """Adaptive quadrature hit its depth cap before meeting the budget."""


class ExchangeStall(LeblabError):
    """Exchange iteration failed to improve the leveled error."""


class DeltaTooLarge(LeblabError):
    """Requested ramp half-width violates the zero-gap bound."""


class DegenerateBrackets(LeblabError):
    """Bracket intervals overlap or are empty; reported rather than merged."""


NUMERIC_STALL_ERRORS = (
    ToleranceUnreachable,
    PrecisionLoss,
    NoSignChange,
    PhaseNotMonotone,
    QuadratureStall,
    ExchangeStall,
    DeltaTooLarge,
    DegenerateBrackets,
)
