"""Exception hierarchy.

Configuration problems derive from ``ValueError``; numerical breakdowns derive
from ``ArithmeticError``. The CLI maps the two families onto distinct exit
codes.
"""


class SemiHarmonicError(Exception):
    """Base class for every error raised by this package."""


class DomainError(SemiHarmonicError, ValueError):
    """Argument outside the domain where an operation is defined or certified."""


class ParameterError(SemiHarmonicError, ValueError):
    """Invalid special-function parameter (e.g. non-positive integer ``c``)."""


class VariantError(SemiHarmonicError, ValueError):
    """Operation not available for this well variant."""


class GeometryError(SemiHarmonicError, ValueError):
    """Closed-form expression requested off the symmetric ``a == b`` geometry."""


class NumericalError(SemiHarmonicError, ArithmeticError):
    """Base class for numerical breakdowns."""


class PoleError(NumericalError):
    """Gamma function evaluated at a pole."""


class PrecisionError(NumericalError):
    """Cancellation destroyed too many significant digits."""


class NodeError(NumericalError):
    """Logarithmic derivative requested at a node of the wavefunction."""


class StiffnessError(NumericalError):
    """ODE step size collapsed."""


class GridError(NumericalError):
    """Adaptive grid refinement ran out of budget."""


class DerivativeError(NumericalError):
    """Finite-difference stencil could not be made branch consistent."""


class BracketError(NumericalError):
    """Root bracket does not enclose a sign change."""
