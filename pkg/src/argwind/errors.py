"""Exception hierarchy.

Every error raised on purpose by the package derives from :class:`ArgwindError`
so the CLI can separate input problems (exit 2) from analysis failures (exit 1).
"""


class ArgwindError(Exception):
    pass


class InputError(ArgwindError):
    """Malformed user input: bad domain, bad expression, bad sample file."""


class AnalysisError(ArgwindError):
    """A computation ran but could not reach a trustworthy answer."""


# geometry
class DomainError(InputError):
    pass


class HoleOutsideOuter(DomainError):
    pass


class OverlappingCircles(DomainError):
    pass


class DegenerateRadius(DomainError):
    pass


class TooFewSamples(InputError):
    pass


# boundary data
class PoleOnBoundary(InputError):
    pass


class ExpressionError(InputError):
    pass


class SamplingMismatch(InputError):
    pass


class CutoffTooLarge(InputError):
    pass


# harmonic
class PointOutsideDomain(InputError):
    pass


class IllConditioned(AnalysisError):
    pass


class ResidualTooLarge(AnalysisError):
    pass


class SingularPeriodMatrix(AnalysisError):
    pass


class HasLogPart(AnalysisError):
    pass


# argument
class ZeroOnBoundary(AnalysisError):
    pass


class UnresolvedPhase(AnalysisError):
    pass


# extend
class NoViableBasePoint(AnalysisError):
    pass


class SmoothingFailed(AnalysisError):
    pass


class VerificationFailed(AnalysisError):
    pass


class CertificateError(InputError):
    pass
