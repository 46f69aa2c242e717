"""Exception hierarchy for SimplexForge."""


class ForgeError(Exception):
    """Base class for every error raised by the library."""


class ComplexError(ForgeError):
    """Invalid complex input: non-pure faces, bad weights, improper coloring, missing face."""


class BudgetExceeded(ForgeError):
    """An enumeration or search would exceed the configured budget."""

    def __init__(self, message: str, required: int = 0, budget: int = 0):
        super().__init__(message)
        self.required = required
        self.budget = budget


class GroupError(ForgeError):
    """Invalid group table or an operation undefined for the given group."""


class CochainError(ForgeError):
    """Cochains with mismatched complex, level or group."""


class PreconditionError(ForgeError):
    """A verifier or bound was called outside the hypotheses it needs."""


class LatticeError(ForgeError):
    """Lattice input is not graded, semimodular or atomistic."""


class SuitabilityError(ForgeError):
    """Color set too short for the requested level."""


class ChainError(ForgeError):
    """Integer chain operation outside its domain."""


class ConeConstructionError(ForgeError):
    """A shifting or star vertex could not be found while building a cone."""


class LoopError(ForgeError):
    """Invalid loop rewrite: triangle absent or sub-walk mismatch."""


class DecodeError(ForgeError):
    """No candidate color set satisfies the decoder hypotheses."""
