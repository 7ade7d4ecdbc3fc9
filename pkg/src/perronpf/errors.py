"""Domain exceptions shared by every module."""


class ToolkitError(Exception):
    """Base class for all perronpf errors."""


# -- polynomial / root finding ------------------------------------------------

class MalformedInput(ToolkitError):
    """Input text could not be parsed as an integer coefficient list."""


class NotMonic(ToolkitError):
    """Leading coefficient is not 1."""


class NotSquarefree(ToolkitError):
    """Polynomial shares a factor with its derivative."""


class NoConvergence(ToolkitError):
    """Root iteration exhausted its budget or certification failed."""


class DegreeTooLarge(ToolkitError):
    """Operation not supported above the configured degree limit."""


# -- number field arithmetic --------------------------------------------------

class FieldMismatch(ToolkitError):
    """Operands live in different number fields."""


class NotInvertible(ToolkitError):
    """Tried to invert the zero element."""


class ReduciblePoly(ToolkitError):
    """Field polynomial is reducible, so the quotient ring is not a field."""


# -- classification -----------------------------------------------------------

class Indeterminate(ToolkitError):
    """Certified root disks are too coarse to decide a strict comparison."""


class RealConjugate(ToolkitError):
    """Expected a non-real conjugate but got a (certified) real one."""


class NotPerron(ToolkitError):
    """Input is not a Perron number."""


class NotUnit(ToolkitError):
    """Constant term of the minimal polynomial is not +/-1."""


class NoDominantRealRoot(ToolkitError):
    """No real root > 1 dominates the conjugate set."""


# -- families -----------------------------------------------------------------

class EpsilonOutOfRange(ToolkitError):
    """Family parameter must satisfy 0 < epsilon < 1."""


class ClaimViolated(ToolkitError):
    """A numerically checked inequality failed; signals an implementation bug."""

    def __init__(self, claim, detail=""):
        self.claim = claim
        self.detail = detail
        super().__init__(f"{claim}: {detail}" if detail else claim)


class HypothesisFailed(ToolkitError):
    """A precondition of the Perron-to-biPerron construction does not hold."""


# -- realization --------------------------------------------------------------

class NotQuadratic(ToolkitError):
    """Operation requires a degree-2 polynomial."""


class Reducible(ToolkitError):
    """Polynomial unexpectedly factors over the integers."""


class BudgetExceeded(ToolkitError):
    """Search node budget exhausted before the space was covered."""


class SingularSystem(ToolkitError):
    """Exact eigen-solve degenerated; the certificate is corrupt."""


class NoComplexConjugate(ToolkitError):
    """Field has no non-real conjugate at the requested index."""


class DegenerateProjection(ToolkitError):
    """A projected lattice point landed on the origin."""


# -- geometry -----------------------------------------------------------------

class InvalidMultiplier(ToolkitError):
    """Multiplier must have Re > 0, Im != 0 and modulus <= 1."""


class TooFewPoints(ToolkitError):
    """Orbit hull is degenerate (fewer than three vertices)."""
