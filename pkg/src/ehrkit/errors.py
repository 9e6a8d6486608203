"""Exception hierarchy for ehrkit."""


class EhrkitError(Exception):
    """Base class for all library errors."""


class InvalidInput(EhrkitError, ValueError):
    pass


class DimensionMismatch(InvalidInput):
    pass


class NotFullDimensional(InvalidInput):
    pass


class BudgetExceeded(EhrkitError):
    """A bounding-box scan or enumeration exceeded its configured budget."""


class GenerationFailed(EhrkitError):
    pass


class CriterionInapplicable(EhrkitError):
    """A criterion was asked about inputs outside its hypotheses."""


class UnknownTheorem(EhrkitError, KeyError):
    pass


# The following signal internal bugs: each guards an identity that always
# holds mathematically, so raising one means an enumeration went wrong.

class InternalInconsistency(EhrkitError, AssertionError):
    pass


class InterpolationMismatch(InternalInconsistency):
    pass


class NegativeDelta(InternalInconsistency):
    pass


class ReciprocityViolation(InternalInconsistency):
    pass


class EquivalenceViolation(InternalInconsistency):
    pass
