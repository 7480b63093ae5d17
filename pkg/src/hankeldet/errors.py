"""Exception hierarchy for the hankeldet package.

Every failure mode that callers are expected to handle gets its own class;
all of them derive from :class:`HankelDetError` so a blanket except is
possible at pipeline boundaries (the CLI maps them to exit codes).
"""


class HankelDetError(Exception):
    """Base class for all package-specific errors."""


# --- special functions -----------------------------------------------------

class PoleError(HankelDetError):
    """Evaluation requested exactly at a pole (e.g. gamma at 0, -1, ...)."""


class BranchJumpError(HankelDetError):
    """Consecutive path points too far apart to track a continuous branch."""


class DivergenceError(HankelDetError):
    """Series/integral evaluated outside its convergence domain."""


class DenominatorPoleError(HankelDetError):
    """A lower hypergeometric parameter is a non-positive integer."""


class ConvergenceError(HankelDetError):
    """An iterative evaluation failed to reach the requested accuracy."""


# --- symbols / factorization ------------------------------------------------

class BalanceError(HankelDetError):
    """Gamma-quotient exponent sums do not balance."""


class ZeroOnContourError(HankelDetError):
    """Symbol vanishes (numerically) at a contour sample point."""


class ResolutionError(HankelDetError):
    """Argument increments too large for reliable winding accumulation."""


class NonzeroWindingError(HankelDetError):
    """Wiener-Hopf factorization requested for a symbol with winding != 0."""


class ZeroInStripError(HankelDetError):
    """Symbol has a zero inside the factorization strip."""


class QuadratureError(HankelDetError):
    """A quadrature did not pass its node-doubling consistency check."""


# --- operators / determinants ----------------------------------------------

class EvaluationError(HankelDetError):
    """A scattering function could not be evaluated where required."""


class LengthError(HankelDetError):
    """Input sequence shorter than the requested construction needs."""


class SingularError(HankelDetError):
    """Matrix (numerically) singular where invertibility is required."""


class TruncationError(HankelDetError):
    """Domain-truncation doubling changed the result beyond tolerance."""


class CoefficientOverflowError(HankelDetError, OverflowError):
    """Coefficient products exceed floating-point range.

    Subclasses the builtin ``OverflowError`` as well, so generic numeric
    callers can catch it without importing this module.
    """


class NonGenericError(HankelDetError):
    """Parameter set violates the genericity needed by residue formulas."""


class ContourPoleError(HankelDetError):
    """A contour line passes through (or too near) a pole ladder."""


# --- orthogonal polynomials / equilibrium ------------------------------------

class NotPositiveDefiniteError(HankelDetError):
    """Moment matrix is not positive definite to the requested order."""


class MissingDataError(HankelDetError):
    """Operation needs optional data (e.g. semiclassical pair) not present."""


class NonSummableError(HankelDetError):
    """Coefficient sequence decays too slowly for the requested evaluation."""


class SingularityError(HankelDetError):
    """Principal-value regularization failed its consistency check."""


class BranchError(HankelDetError):
    """Square-root branch continuity check failed."""
