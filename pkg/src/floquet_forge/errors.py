"""Exception hierarchy shared by every module of the package."""


class FloquetForgeError(Exception):
    """Base class for all package errors."""


class ComputationError(FloquetForgeError):
    """A computation could not be completed (CLI exit code 3)."""


# series_core
class VariableMismatch(ComputationError):
    pass


class DivisionByZeroSeries(ComputationError):
    pass


class NonInvertibleLeadingTerm(ComputationError):
    pass


class LatticeOverflow(ComputationError):
    pass


class DivergentComposition(ComputationError):
    pass


class NotInvertible(ComputationError):
    pass


class PoleHit(ComputationError):
    pass


class AlphabetError(ComputationError):
    pass


# modular / oracle
class DomainError(ComputationError):
    pass


# wkb
class ReductionStuck(ComputationError):
    pass


class MinimizationFailed(ComputationError):
    pass


# spectra
class RouteDisagreement(ComputationError):
    pass


class InsufficientOrder(ComputationError):
    pass


class LimitMismatch(ComputationError):
    pass


class RegroupMismatch(ComputationError):
    pass


class AmbiguousRegion(ComputationError):
    pass


# oracle
class StiffnessFailure(ComputationError):
    pass


class BranchAmbiguity(ComputationError):
    pass


class RegionViolation(UserWarning):
    """Parameters fall outside the advised expansion region."""
