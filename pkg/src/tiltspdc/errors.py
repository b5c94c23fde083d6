"""Exception hierarchy.

Every error maps onto one CLI exit code: validation problems (2), physics
domain problems such as unattainable phase matching (3), and numerical guard
failures such as an under-resolved grid (4).
"""


class TiltSpdcError(ValueError):
    exit_code = 1


class ValidationError(TiltSpdcError):
    exit_code = 2


class PhysicsDomainError(TiltSpdcError):
    exit_code = 3


class NumericalGuardError(TiltSpdcError):
    exit_code = 4


class WavelengthRangeError(PhysicsDomainError):
    pass


class PhaseMatchingError(PhysicsDomainError):
    pass


class DegenerateTiltError(PhysicsDomainError):
    pass


class GratingError(PhysicsDomainError):
    pass


class UnsupportedBranchError(PhysicsDomainError):
    pass


class GridResolutionError(NumericalGuardError):
    pass


class AsymmetricGridError(NumericalGuardError):
    pass


class DelayWindowError(NumericalGuardError):
    pass


class UndefinedCorrelationError(NumericalGuardError):
    pass
