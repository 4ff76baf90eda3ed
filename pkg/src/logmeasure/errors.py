"""Exception types shared across the package."""


class LogMeasureError(ValueError):
    """Base class for all argument and state errors raised by this package."""


class MalformedInterval(LogMeasureError):
    """Interval endpoints out of order."""


class OutOfRange(LogMeasureError):
    """A mass or coordinate argument lies outside its admissible range."""


class ZeroMass(LogMeasureError):
    """Operation requires a measure with strictly positive total mass."""


class OverlapError(LogMeasureError):
    """Density blocks overlap or are out of order."""


class DepthExceeded(LogMeasureError):
    """Requested recursion level exceeds the constructed depth."""


class BudgetExceeded(LogMeasureError):
    """An enumeration or refinement budget was exceeded."""


class NonpositiveDistance(LogMeasureError):
    """Kernel evaluated at a nonpositive distance."""


class DiscontinuousInput(LogMeasureError):
    """Operation requires a CDF carrying the continuity flag."""


class BadExponent(LogMeasureError):
    """Holder exponent outside (0, 1]."""


class BadBeta(LogMeasureError):
    """Log-modulus exponent must satisfy beta > 1."""


class DegenerateModulus(LogMeasureError):
    """Sampled modulus vanishes at every scale; no fit is possible."""


class TooFewPoints(LogMeasureError):
    """Not enough sample points for the requested operation."""


class EmptyMeasure(LogMeasureError):
    """Point measure with no atoms."""


class AtomOnGrid(LogMeasureError):
    """A velocity grid node coincides with an atom of the measure."""


class RegionOutsideGrid(LogMeasureError):
    """Integration region is not contained in the sampled grid hull."""


class BadParams(LogMeasureError):
    """Constructor parameters violate a documented precondition."""
