"""Exception hierarchy shared by the kernel, the evaluators and the harness."""


class MockFormsError(Exception):
    pass


class DenominatorError(MockFormsError):
    """Exponent denominator cannot be represented (or exceeds the allowed maximum)."""

    def __init__(self, message, required=None):
        super().__init__(message)
        self.required = required


class NotInvertibleError(MockFormsError, ZeroDivisionError):
    pass


class WindowUnderflowError(MockFormsError):
    """A w-jet coefficient was requested outside the retained window."""

    def __init__(self, message, deficit=0):
        super().__init__(message)
        self.deficit = deficit


class DomainError(MockFormsError, ValueError):
    """Argument outside the domain of a numeric evaluator (e.g. Im(tau) <= 0)."""


class SingularInputError(DomainError):
    """Argument too close to a pole of the function being evaluated."""


class DivergentTailError(MockFormsError):
    """Tail majorant does not converge for the requested point and truncation."""


class ConsistencyError(MockFormsError):
    """Two routes that must agree exactly disagree, or a pole failed to cancel."""


class ConfigError(MockFormsError):
    pass
