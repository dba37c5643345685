"""Exception types shared across the package."""


class QuatmonoError(Exception):
    """Base class for all errors raised by this package."""


class NotInvertible(QuatmonoError):
    """An algebra element has no inverse (a diagonal coefficient is ~0)."""


class WrongForm(QuatmonoError):
    """An operation received an element outside its supported subspace."""


class DependentBasis(QuatmonoError):
    """The three frame vectors fail to be linearly independent over R."""


class NotSurjective(QuatmonoError):
    """A coordinate functional maps the frame's span into R, not onto C."""


class PoleHit(QuatmonoError):
    """Evaluation ran into a denominator below the pole threshold."""


class ParseError(QuatmonoError):
    """Malformed expression text; carries the offending position."""

    def __init__(self, message, position):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class NoConvergence(QuatmonoError):
    """Adaptive quadrature exhausted its subdivision budget."""


class TooClose(QuatmonoError):
    """A reference point lies inside the clearance band of a curve."""


class Ambiguous(QuatmonoError):
    """A winding integral did not land close enough to an integer."""


class NotEmbracing(QuatmonoError):
    """A projected curve does not wind exactly once around its target."""


class FrameNotHarmonic(QuatmonoError):
    """The frame's quadratic defect is nonzero where zero is required."""


class ConfigError(QuatmonoError):
    """Invalid run configuration (parse failure or bad references)."""
