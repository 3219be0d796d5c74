"""Exception hierarchy shared across the package."""


class GradvalError(Exception):
    """Base class for all errors raised by this package."""


class NotSubgroupoid(GradvalError):
    """The given subset is not closed under the partial multiplication/inverse."""


class NormalityViolation(GradvalError):
    """Conjugation does not preserve the vertex groups of the subgroupoid."""


class DivisionByZero(GradvalError):
    pass


class DescriptorMismatch(GradvalError):
    """Scalars from different coefficient fields were mixed."""


class NegativeValue(GradvalError):
    """Residue requested for a scalar outside the valuation ring."""


class ParentMismatch(GradvalError):
    """Graded elements or patterns over different parent rings were mixed."""


class CharacteristicObstruction(GradvalError):
    """The coefficient characteristic blocks the requested construction."""


class KindMismatch(GradvalError):
    """A pattern of the wrong kind (subring vs ideal) was supplied."""


class NotMember(GradvalError):
    """A generator lies outside the ambient pattern."""


class NotTotal(GradvalError):
    """The operation requires a total subring pattern."""


class NotStrong(GradvalError):
    """The operation requires a strongly graded (tight) pattern."""


class LengthViolation(GradvalError):
    """A residue component would have length > 1 over the residue field."""


class ValuationUnsupported(GradvalError):
    pass


class NotGValuationRing(GradvalError):
    """The value machinery requires a total and stable subring pattern."""


class NotInvertible(GradvalError):
    """A ring-invertible element was required."""


class HypothesisViolation(GradvalError):
    """A proposition's hypothesis fails for the given input."""


class ParseError(GradvalError):
    """A scalar, element, or scenario file failed to parse."""


class ValidationError(GradvalError):
    """A scenario parsed but its data is inconsistent."""


class UnknownExample(GradvalError):
    pass


class InternalInvariantError(GradvalError):
    """A structural fact guaranteed by the theory failed; indicates a bug."""
