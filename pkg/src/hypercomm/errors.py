class HypercommError(Exception):
    pass


class ParseError(HypercommError, ValueError):
    def __init__(self, message: str, lineno: int | None = None):
        super().__init__(message)
        self.lineno = lineno


class EmptyInputError(HypercommError, ValueError):
    pass


class ConsistencyError(HypercommError, ValueError):
    """Inputs that were supposed to describe the same hypergraph disagree."""


class UndefinedError(HypercommError, ValueError):
    """A statistic is undefined for the given input (empty, constant, ...)."""


class InvariantViolation(HypercommError, RuntimeError):
    pass
