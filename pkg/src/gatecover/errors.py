"""Exception types shared across the package."""


class GatecoverError(Exception):
    """Base class for all domain errors raised by this package."""


class NotUnitaryError(GatecoverError):
    """A matrix expected to be unitary fails the unitarity tolerance."""


class NotSymmetricError(GatecoverError):
    """A matrix expected to be (complex) symmetric is not."""


class ConvergenceFailureError(GatecoverError):
    """An iterative or branch-resolving numerical step did not converge."""


class NotInChamberError(GatecoverError):
    """A coordinate triple lies outside the Weyl chamber."""


class ConstraintViolationError(GatecoverError):
    """A derived value violates its structural constraints (ill-formed input)."""


class BoxViolationError(GatecoverError):
    """A partition does not fit the required r x k bounding box."""


class InvalidContentError(GatecoverError):
    """A nonlocal-content vector is malformed or not exactly representable."""


class NumericOverflowError(GatecoverError):
    """Exact rational arithmetic exceeded the configured magnitude bounds."""


class OutOfRangeError(GatecoverError):
    """A family parameter lies outside the family's declared range."""


class NotOnFsimPlaneError(GatecoverError):
    """A coordinate does not lie on either plane realizable by the fSim gate set."""


class CalibrationFailureError(GatecoverError):
    """A circuit template could not be calibrated to its target class."""


class NotReachableError(GatecoverError):
    """The target class is not reachable with two applications of the given gate."""


class ParseError(GatecoverError):
    """Malformed CLI input (gate spec, angle literal, or matrix file)."""
