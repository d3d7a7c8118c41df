"""Exception hierarchy shared by the library and the CLI.

``InputError`` maps to CLI exit code 1, ``NumericError`` to exit code 2.
"""


class EinstabError(Exception):
    """Base class for all einstab errors."""


class InputError(EinstabError, ValueError):
    """Caller supplied data that violates a documented precondition."""


class CurvatureError(InputError):
    """A 4-tensor fails the algebraic curvature symmetries."""


class NumericError(EinstabError, RuntimeError):
    """An internal computation failed (non-convergence, broken invariant)."""


class ConvergenceError(NumericError):
    pass


class ConventionError(NumericError):
    """A constructed tensor violates an identity it must satisfy by construction."""
