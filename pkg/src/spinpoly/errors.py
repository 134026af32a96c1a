"""Exception types shared across the package."""


class SpinpolyError(Exception):
    """Base class for all package-specific errors."""


# -- graphs ---------------------------------------------------------------

class NonTrivalent(SpinpolyError):
    """A non-leaf vertex has degree != 3."""


class Disconnected(SpinpolyError):
    pass


class BadLeafLabels(SpinpolyError):
    """Leaf labels are not a bijection 1..n onto the degree-1 vertices."""


class LengthMismatch(SpinpolyError):
    pass


class BoundsTooLarge(SpinpolyError):
    pass


# -- polytopes ------------------------------------------------------------

class Unbounded(SpinpolyError):
    pass


class InvalidParams(SpinpolyError):
    pass


class ParityViolation(SpinpolyError):
    pass


class OddWeightEncountered(SpinpolyError):
    pass


class BaseMismatch(SpinpolyError):
    pass


class IncompatibleWeights(SpinpolyError):
    pass


# -- term orders / category ----------------------------------------------

class NotFlag(SpinpolyError):
    pass


class NotTotal(SpinpolyError):
    pass


class NotAPolytopeMap(SpinpolyError):
    pass


class NonUniqueBase(SpinpolyError):
    pass


class NonTotalComponents(SpinpolyError):
    pass


# -- toric ----------------------------------------------------------------

class NormalityPrerequisiteFailed(SpinpolyError):
    pass


class NotBalanced(SpinpolyError):
    pass


class WrongDimension(SpinpolyError):
    pass


class HypothesisViolated(SpinpolyError):
    pass
