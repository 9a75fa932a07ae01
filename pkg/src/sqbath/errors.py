"""Typed errors raised by the analytic and Fock-basis layers.

Every failure mode a caller can act on gets its own class so the CLI can
map them to distinct exit codes and tests can assert on the exact cause.
"""


class SqbathError(Exception):
    """Base class for all package-specific errors."""


class ConfigError(SqbathError):
    """Run configuration is malformed or violates a parameter domain."""


class DegenerateDenominator(SqbathError):
    """Mandel Q is undefined: the mean photon number vanishes."""


class SingularSmoothing(SqbathError):
    """A smoothed-descriptor evaluation was requested where a total
    Gaussian coefficient is not strictly positive, so the density is
    still distributional and has no pointwise value."""


class UnsupportedDescriptor(SqbathError):
    """The requested descriptor operation has no closed form for this
    state family (e.g. pointwise evaluation of cat interference)."""


class SeriesDiverges(SqbathError):
    """The displaced-number series only converges for tau > 1/2."""


class TruncationTooSmall(SqbathError):
    """The Fock-space dimension cannot hold the requested state within
    the leakage budget.  Carries a remediation hint."""


class TraceDriftExceeded(SqbathError):
    """The integrator's trace error grew past the acceptance bound,
    signalling truncation or step-size trouble."""


class ImmediateTransition(SqbathError):
    """The state acquires nonclassicality at t = 0+ with no later
    sign change, so there is no finite transition time to report."""
