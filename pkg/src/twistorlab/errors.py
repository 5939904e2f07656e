"""Exception hierarchy shared across the library."""


class TwistorLabError(Exception):
    """Base class for all twistorlab errors."""


class ZeroDivisorError(TwistorLabError, ZeroDivisionError):
    """A biquaternion with no inverse was inverted."""


class SingularFieldError(TwistorLabError):
    """Field evaluation hit a non-invertible intermediate value."""


class SingularMoebiusError(TwistorLabError):
    """Sphere Moebius map is singular at the requested point."""


class DegenerateMapError(TwistorLabError):
    """Projective-line coefficients do not define a map (ad = bc)."""


class NotNormalizedError(TwistorLabError):
    """A Lorentz biquaternion failed the phi * conj(phi) = 1 check."""


class SingularPointError(TwistorLabError):
    """Biquaternion Moebius denominator is a zero divisor at this point."""


class DegenerateFactorizationError(TwistorLabError):
    """The chi/psi factorization formulas require an inverse that fails."""


class BranchFailureError(TwistorLabError):
    """Complex root hit its branch cut (zero or negative-real argument)."""


class ChartMissError(TwistorLabError):
    """Point lies outside the requested coordinate chart."""


class OriginSingularError(TwistorLabError):
    """Transition map is undefined at the chart origin."""


class DegenerateEmbeddingError(TwistorLabError):
    """Line-embedding coefficients are degenerate."""


class NoIntersectionError(TwistorLabError):
    """The two planes do not meet."""


class ChartSingularError(TwistorLabError):
    """Line and hyperplane share a fiber direction; chart undefined."""


class PoleChartError(TwistorLabError):
    """Plane structure coincides with a chart pole."""


class NonNullDirectionError(TwistorLabError):
    """Transport requested along a direction that is not null."""


class SingularOnPathError(TwistorLabError):
    """Potential or field is singular somewhere on the transport segment."""


class NotASolutionError(TwistorLabError):
    """Map data residuals are too large for the input to be a solution."""


class UnknownSuiteError(TwistorLabError):
    """Requested verification suite does not exist."""
