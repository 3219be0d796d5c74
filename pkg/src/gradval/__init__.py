"""Exact arithmetic for groupoid-graded skewfields and their valuations."""

__version__ = "0.1.0"

from .algebra import GradedElement, Twist, TwistedGroupoidRing  # noqa: F401
from .groupoids import FiniteGroup, Groupoid, GroupoidOrder, delta, product_with_delta  # noqa: F401
from .omega import OmegaClass, ValueGroupoid  # noqa: F401
from .patterns import BoundPattern  # noqa: F401
from .scalars import FieldSpec, Scalar  # noqa: F401
from .valuation import CanonicalValuation, OrderValuation, Value  # noqa: F401
