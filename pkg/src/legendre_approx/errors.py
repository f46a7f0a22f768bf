"""Exception hierarchy shared by all modules."""


class ApproxError(Exception):
    """Base class for every error raised by this package."""


class InvalidIntervalError(ApproxError, ValueError):
    pass


class DomainError(ApproxError, ValueError):
    """Evaluation point outside the supported domain."""


class ParameterError(ApproxError, ValueError):
    pass


class ConvergenceError(ApproxError, ArithmeticError):
    pass


class EvaluationError(ApproxError, ArithmeticError):
    """A function returned a non-finite value where a finite one is required."""


class CapabilityError(ApproxError, TypeError):
    """The function spec lacks something the operation needs (e.g. derivatives)."""


class UnknownFunctionError(ApproxError, LookupError):
    pass


class DegenerateFunctionError(ApproxError, ValueError):
    """Taylor scan ran out of degrees before finding enough nonzero terms."""


class UndefinedSNRError(ApproxError, ZeroDivisionError):
    pass
