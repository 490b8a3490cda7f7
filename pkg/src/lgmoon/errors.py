"""Exception hierarchy shared by every module in the package."""


class MoonError(Exception):
    """Base class for all package errors."""


class DomainError(MoonError, ValueError):
    """An argument lies outside the domain where the computation is defined.

    The CLI maps every subclass to exit status 3.
    """


class ZeroConstantTerm(MoonError, ZeroDivisionError):
    pass


class NonzeroConstantTerm(MoonError, ValueError):
    pass


class NotReversible(MoonError, ValueError):
    pass


class PoleAtOrigin(MoonError, ZeroDivisionError):
    pass


class InvalidParameters(MoonError, ValueError):
    pass


class NonPositiveArgument(DomainError):
    pass


class ZeroBase(DomainError):
    pass


class ReconstructionError(MoonError, ArithmeticError):
    pass


class Ambiguous(ReconstructionError):
    pass


class NoneFound(ReconstructionError):
    pass


class OutOfDomain(DomainError):
    pass


class NoConvergence(MoonError, ArithmeticError):
    pass


class GammaPole(DomainError):
    pass


class PoleInput(DomainError):
    pass


class NotUpperHalfPlane(DomainError):
    pass


class ContourTooLarge(DomainError):
    pass


class SectorBoundary(DomainError):
    pass
