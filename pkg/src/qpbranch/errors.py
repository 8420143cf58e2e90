"""Exception types shared by the solvers."""


class QPBranchError(Exception):
    """Base class for all library errors."""


class ParseError(QPBranchError):
    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class ContractError(QPBranchError, ValueError):
    """A precondition of a library call was not met by the caller."""


class ViolationError(QPBranchError):
    """A structural guarantee failed, which means the input broke a precondition.

    ``certificate`` carries whatever cheap evidence was at hand, for example an
    induced path or cycle that is too long for the declared graph class.
    """

    def __init__(self, message, certificate=None):
        self.certificate = certificate
        super().__init__(message)


class BudgetExceeded(QPBranchError):
    """Raised when a node, time or witness budget runs out.

    ``stats`` holds whatever partial instrumentation was collected.
    """

    def __init__(self, message, stats=None):
        self.stats = stats
        super().__init__(message)


class NoSolution(QPBranchError):
    """The automaton solver found nothing it accepts, not even the empty set."""
