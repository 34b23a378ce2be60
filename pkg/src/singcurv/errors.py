"""Exception hierarchy shared by all singcurv modules."""


class SingcurvError(Exception):
    """Base class for every error raised by the library."""


class InputError(SingcurvError):
    """Bad user input (parse failures, wrong points). CLI exit code 2."""


class SolverError(SingcurvError):
    """The input is valid but a solver cannot finish. CLI exit code 3."""


class MixedRings(SingcurvError):
    pass


class ZeroPolynomial(SingcurvError):
    pass


class UnknownVariable(InputError):
    pass


class ExprSyntaxError(InputError):
    """Raised by the expression parser; ``offset`` is the byte offset of the fault."""

    def __init__(self, message, offset):
        super().__init__(f"{message} (at offset {offset})")
        self.offset = offset


class NonPolynomial(InputError):
    pass


class PointNotOnVariety(InputError):
    pass


class SingularPoint(SolverError):
    pass


class NonLinearTangentCone(SolverError):
    pass


class NoConvergence(SolverError):
    def __init__(self, message, best_residual=None):
        super().__init__(message)
        self.best_residual = best_residual


class OrderExhausted(SolverError):
    pass


class PencilUnresolved(SolverError):
    pass


class NoBranch(SolverError):
    pass


class InsufficientSamples(SolverError):
    pass
