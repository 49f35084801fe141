"""Exception hierarchy shared by all modules."""


class RealDPError(Exception):
    """Base class for every error raised by this package."""


class DegreeOutOfRange(RealDPError, ValueError):
    pass


class LatticeMismatch(RealDPError, ValueError):
    pass


class DegreeMismatch(RealDPError, ValueError):
    pass


class NotARoot(RealDPError, ValueError):
    pass


class NotAnInvolution(RealDPError, ValueError):
    pass


class NotAnIsometry(RealDPError, ValueError):
    pass


class KNotAntiInvariant(RealDPError, ValueError):
    pass


class VectorOutsideDomain(RealDPError, ValueError):
    pass


class InconsistentConstraints(RealDPError, ValueError):
    """No quadratic function satisfies the constraints.

    ``conflict`` holds a minimal inconsistent subset of the constraints.
    """

    def __init__(self, message, conflict=()):
        super().__init__(message)
        self.conflict = tuple(conflict)


class ParityMismatch(RealDPError, ValueError):
    pass


class NonIntegralResult(RealDPError, ArithmeticError):
    pass


class BadConstantTerm(RealDPError, ValueError):
    pass


class DivisionByZeroInSpecialization(RealDPError, ZeroDivisionError):
    pass


class NoConsistentAnchor(RealDPError, ValueError):
    pass


class OddParity(RealDPError, ValueError):
    pass


class BadK(RealDPError, ValueError):
    pass
