"""Exception hierarchy shared by every module of the package."""


class ConormalError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(ConormalError, ValueError):
    """Input outside an operation's domain, or a hypothesis that does not hold."""


class RingMismatchError(DomainError):
    """Operands live in different polynomial rings."""


class UnknownVariableError(DomainError):
    pass


class NonHomogeneousError(DomainError):
    pass


class NotZeroDimensionalError(DomainError):
    pass


class DegenerateChoiceError(DomainError):
    """Random generic choices kept landing on a degenerate locus."""


class UnsupportedSingularityError(DomainError):
    """A curve singularity outside the node/cusp classes met the Euler route."""

    def __init__(self, message, local_data=None):
        super().__init__(message)
        self.local_data = local_data


class UndecomposedRemainderError(DomainError):
    """Component splitting stalled; ``remainder`` is the ideal left over."""

    def __init__(self, message, remainder=None):
        super().__init__(message)
        self.remainder = remainder


class AmbiguousMultiplicityError(DomainError):
    pass


class BudgetExceededError(ConormalError):
    """A Groebner computation hit its step or degree cap."""

    def __init__(self, cap, limit, value):
        super().__init__(f"budget exceeded: {cap} limit {limit} reached ({value})")
        self.cap = cap
        self.limit = limit
        self.value = value


class ParseError(DomainError):
    def __init__(self, message, line=None, column=None):
        where = f"line {line}, column {column}: " if line is not None else ""
        super().__init__(where + message)
        self.line = line
        self.column = column
        self.bare_message = message
