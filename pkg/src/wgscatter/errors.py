"""Exception types shared across the package.

The CLI maps these onto exit codes: ConfigError -> 2, the numerical
domain errors -> 3, OracleConvergenceError -> 4.
"""


class EvanescentModeError(ValueError):
    """Requested a propagating quantity below the mode cutoff."""


class CutoffProximityError(ValueError):
    """Energy coincides with (or sits inside the guard band of) a cutoff.

    Densities of state and decay rates diverge at a cutoff, so evaluation
    is refused rather than returning huge intermediates. Exact coincidence
    with an input-carrying mode is handled separately as a limit.
    """


class BranchPointError(CutoffProximityError):
    """Energy exactly at a cutoff, where the dispersion branch changes."""


class SingularResolventError(ZeroDivisionError):
    """The resolvent denominator vanished (decoupled emitter on resonance)."""


class OracleConvergenceError(RuntimeError):
    """Richardson extrapolation of the principal-value quadrature failed."""


class ConfigError(ValueError):
    """Malformed run configuration; message carries section.key context."""
