"""Exception types shared across the package."""


class IpdError(Exception):
    """Base class for all package-specific errors."""


class IrreducibleDenominator(IpdError):
    """A denominator does not split into linear factors over the Gaussian rationals."""


class LatticeTooSmall(IpdError):
    """Cokernel dimensions kept changing after enlarging the lattice bounds twice."""


class InconsistentRank(IpdError):
    """Per-point block dimensions do not sum to the stated rank."""


class InconsistentMonodromy(IpdError):
    """Monodromy multipliers whose product is not 1."""


class NonIntegralDimension(IpdError):
    """A dimension formula produced a non-integer where an integer is required."""


class NotIrregular(IpdError):
    """Stokes data requested at a point with pole order <= 1."""


class InvalidAnchor(IpdError):
    """A requested decay-ray direction is not inside a decay sector."""


class BasisNotFound(IpdError):
    """Candidate cycle generation produced fewer independent cycles than required."""


class SingularApproach(IpdError):
    """A cycle piece passes closer to a singular point than the safety distance."""


class DomainError(IpdError):
    """Reference oracle evaluated outside its supported domain."""


class InputError(IpdError):
    """Malformed connection or cycle input."""
