"""Exception hierarchy.

Three families map onto CLI exit codes: validation failures (1),
precondition failures (2) and certificate violations (3).
"""


class ToricError(Exception):
    exit_code = 2


class ValidationError(ToricError):
    exit_code = 1


class PreconditionError(ToricError):
    exit_code = 2


class CertificateViolation(ToricError):
    """An inequality the theory guarantees failed: an implementation bug."""

    exit_code = 3


# ratgeom
class UnboundedError(PreconditionError):
    pass


class EmptyError(PreconditionError):
    pass


class ZeroVolumeError(PreconditionError):
    pass


class DuplicateAbscissaError(PreconditionError):
    pass


class OutOfDomainError(PreconditionError):
    pass


class LatticeLimitError(PreconditionError):
    """Lattice enumeration would exceed the configured point budget."""


# toricvar
class FanValidationError(ValidationError):
    def __init__(self, diagnostics):
        self.diagnostics = list(diagnostics)
        super().__init__("; ".join(str(d) for d in self.diagnostics))


class NotQCartierError(PreconditionError):
    def __init__(self, cone_index, message=None):
        self.cone_index = cone_index
        super().__init__(message or f"divisor is not Q-Cartier on cone {cone_index}")


class NotAmpleError(PreconditionError):
    pass


class NotInPolytopeError(PreconditionError):
    pass


# valuation
class NotQGorensteinError(PreconditionError):
    pass


class TrivialValuationError(PreconditionError):
    pass


class NotInteriorToMaximalConeError(PreconditionError):
    pass


# invariants
class InterpolationMismatchError(CertificateViolation):
    pass


# kstability
class NotQFanoError(PreconditionError):
    pass
