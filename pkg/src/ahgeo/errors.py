"""Exception hierarchy shared across the package.

Every error raised by the library derives from AhgeoError so callers can
catch the whole family at once; the CLI maps AhgeoError to exit code 1 and
usage/config problems to exit code 2.
"""


class AhgeoError(Exception):
    """Base class for all library errors."""


# tensor engine -------------------------------------------------------------

class DegenerateMetric(AhgeoError):
    """Metric is singular (|det| below tolerance) or has the wrong signature."""


class DomainError(AhgeoError):
    """Point lies outside the declared chart domain."""


class DimensionTooSmall(AhgeoError):
    """Requested tensor or flag is undefined in this dimension."""


class DegeneratePlane(AhgeoError):
    """Sectional-curvature plane has (near-)zero Gram determinant."""


# holographic expansion -----------------------------------------------------

class IllConditionedFit(AhgeoError):
    """Extrapolation ladder rungs disagree beyond tolerance."""


# submanifold geometry ------------------------------------------------------

class RankDeficient(AhgeoError):
    """Embedding differential loses rank at the queried point."""


class AmbientNotPE(AhgeoError):
    """Ambient-space check required Einstein normalization Ric = -n g and it failed."""


class CodimensionError(AhgeoError):
    """Operation requires a specific codimension (e.g. a hypersurface)."""


class NotMinimal(AhgeoError):
    """Mean curvature exceeds the minimality tolerance."""


class NotOrthogonal(AhgeoError):
    """Submanifold fails to meet the boundary orthogonally to tolerance."""


class ExtrapolationFailure(AhgeoError):
    """Boundary-limit extrapolation did not converge."""


# catenoid profiles ----------------------------------------------------------

class BlowupBeforeSmax(AhgeoError):
    """Profile hit x1 <= 0 before reaching the requested arc length."""


class ToleranceNotMet(AhgeoError):
    """Integrator finished but the ODE residual exceeds the requested tolerance."""


class ArcLengthViolation(AhgeoError):
    """Unit-speed constraint broke: the phi' radicand went negative beyond tolerance."""


class InsufficientRange(AhgeoError):
    """Profile was not integrated far enough for the requested asymptotic fit."""


# Cheeger / spectral ---------------------------------------------------------

class InvalidCMC(AhgeoError):
    """|C| > k+1: the CMC value is outside the admissible range."""


class InvalidP(AhgeoError):
    """p <= 1 is outside the admissible range for the p-Laplacian chain."""


class NotLeeEigenfunction(AhgeoError):
    """Scalar field fails the eigenfunction contract (positivity, PDE, or
    gradient estimate) at a sampled point."""


# catalog / CLI ---------------------------------------------------------------

class UnknownEntry(AhgeoError):
    """Catalog entry name not registered."""


class IncompatibleEntry(AhgeoError):
    """Catalog entry exists but does not support the requested operation."""


class ConfigParseError(AhgeoError):
    """Config file syntax error; carries 1-based line and column."""

    def __init__(self, message, line, column):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column
