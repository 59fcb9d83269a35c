"""Exception hierarchy shared by every module of the package."""


class FermatForgeError(Exception):
    """Base class for all package errors."""


class DimensionMismatch(FermatForgeError, ValueError):
    pass


class AxisOutOfRange(FermatForgeError, IndexError):
    pass


class PeriodicityViolation(FermatForgeError, ValueError):
    """A polynomial or direction that must be c-periodic is not."""


class OverflowInFold(FermatForgeError, OverflowError):
    """Folding a constant exponent into the coefficient would overflow."""


class TotalOverflow(FermatForgeError, OverflowError):
    """An evaluated value is not representable as a double.

    The log-domain form is attached as ``log`` so callers can still use it.
    """

    def __init__(self, message, log=None):
        super().__init__(message)
        self.log = log


class NotSingleExponential(FermatForgeError, ValueError):
    pass


class ZeroProduct(FermatForgeError, ValueError):
    pass


class DegenerateRoots(FermatForgeError, ValueError):
    pass


class DegenerateOmega(FermatForgeError, ValueError):
    pass


class BranchDegenerate(FermatForgeError, ZeroDivisionError):
    pass


class ConstraintViolated(FermatForgeError, ValueError):
    """A side condition required by a solution family does not hold."""

    def __init__(self, message, residual=None):
        super().__init__(message)
        self.residual = residual


class NoSolution(FermatForgeError, ValueError):
    pass


class ZeroXi(NoSolution):
    pass


class ZeroTarget(FermatForgeError, ValueError):
    pass


class DenominatorZero(FermatForgeError, ZeroDivisionError):
    pass


class DegenerateGrid(FermatForgeError, ValueError):
    pass


class InvalidSpec(FermatForgeError, ValueError):
    """An equation specification violates its structural invariants."""


class MalformedInput(FermatForgeError, ValueError):
    """A JSON payload could not be decoded into the expected structure."""
