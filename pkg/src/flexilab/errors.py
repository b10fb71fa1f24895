"""Exception hierarchy shared by all flexilab modules."""


class FlexError(Exception):
    """Base class for every error raised by flexilab."""


# combinatorics
class ComplexError(FlexError, ValueError):
    pass


class RidgeCountError(ComplexError):
    pass


class DisconnectedError(ComplexError):
    pass


class NonOrientableError(ComplexError):
    pass


class InvolutionError(ComplexError):
    pass


# metric layer
class OffModelError(FlexError, ValueError):
    pass


class ShapeError(FlexError, ValueError):
    pass


class NotRealizableError(FlexError, ValueError):
    pass


class DegenerateSimplexError(FlexError, ValueError):
    pass


class DegenerateFacetError(FlexError, ValueError):
    pass


class NullCombinationError(FlexError, ValueError):
    pass


class GramRealizationError(FlexError, ValueError):
    """A matrix cannot be the normal Gram matrix of a simplex."""


class RankError(GramRealizationError):
    pass


class SignError(GramRealizationError):
    pass


class MinorError(GramRealizationError):
    pass


# elliptic functions
class DomainError(FlexError, ValueError):
    pass


class DegenerateShiftError(FlexError, ValueError):
    pass


# families
class SpecError(FlexError, ValueError):
    pass


class DegenerateParameterError(FlexError, ValueError):
    pass


class PhaseCollisionError(SpecError):
    pass


class TrackingFailedError(FlexError, RuntimeError):
    pass


# configuration spaces
class MissingLengthError(FlexError, KeyError):
    pass


class NotOnVarietyError(FlexError, ValueError):
    pass


class RigidError(TrackingFailedError):
    pass


class BifurcationError(TrackingFailedError):
    def __init__(self, msg, path=None):
        super().__init__(msg)
        self.path = path


class CorrectorDivergenceError(TrackingFailedError):
    def __init__(self, msg, path=None):
        super().__init__(msg)
        self.path = path


class SymmetryMismatchError(FlexError, ValueError):
    pass


# volumes
class OnSurfaceError(FlexError, ValueError):
    pass


class RetryExhaustedError(FlexError, RuntimeError):
    pass


class CoarsePathError(FlexError, ValueError):
    pass


# cli / io
class ParseError(FlexError, ValueError):
    pass


class ValidationError(FlexError, ValueError):
    pass
