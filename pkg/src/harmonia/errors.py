"""Exception types raised by the library.

Everything derives from :class:`HarmoniaError`, which itself derives from
``ValueError`` so that generic callers can keep a single except clause.
"""

__all__ = [
    "HarmoniaError",
    "DomainError",
    "CutProximityError",
    "PoleError",
    "NonSymmetricPairError",
    "BranchSelectionError",
    "BranchPointOnPathError",
    "QuadratureConvergenceError",
    "NonzeroMeanError",
    "ResonanceError",
]


class HarmoniaError(ValueError):
    """Base class for all errors raised by this package."""


class DomainError(HarmoniaError):
    """Evaluation requested outside an expression's domain (e.g. at z = 0)."""


class CutProximityError(DomainError):
    """Point or ray lies within the configured angular margin of the log cut."""


class PoleError(DomainError):
    """A Schwarz map or its inverse was evaluated at its pole."""


class NonSymmetricPairError(HarmoniaError):
    """A real-slice evaluation was asked of a pair that is not conjugate-symmetric."""


class BranchSelectionError(HarmoniaError):
    """The outward-normal validation of a square-root branch failed."""


class BranchPointOnPathError(BranchSelectionError):
    """A square-root branch cannot be continued because the derivative
    vanishes, blows up, or winds too fast along the path."""


class QuadratureConvergenceError(HarmoniaError):
    """Adaptive quadrature hit its maximum recursion depth."""


class NonzeroMeanError(HarmoniaError):
    """Neumann data whose boundary mean does not vanish was rejected."""


class ResonanceError(HarmoniaError):
    """The termwise first-order ODE solver cannot close the requested term."""
