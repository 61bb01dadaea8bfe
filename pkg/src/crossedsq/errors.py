"""Exception types shared across the package."""


class CrossedSqError(Exception):
    """Base class for errors raised by crossedsq."""


class SpecError(CrossedSqError, ValueError):
    """A spec document is malformed or describes invalid data."""


class GroupAxiomError(SpecError):
    """A multiplication table or permutation fails the group axioms."""


class HomError(CrossedSqError, ValueError):
    """Generator images do not define a homomorphism."""


class ActionError(CrossedSqError, ValueError):
    """A table does not define an action by automorphisms."""


class NotNormalError(CrossedSqError, ValueError):
    """A subgroup was required to be normal but is not."""


class CosetOverflow(CrossedSqError, RuntimeError):
    """Coset enumeration exceeded its budget (group possibly infinite or too large)."""

    def __init__(self, max_cosets, message=None):
        self.max_cosets = max_cosets
        super().__init__(
            message
            or f"coset enumeration exceeded {max_cosets} cosets "
            "(group possibly infinite or too large)"
        )


class GroupTooLarge(CrossedSqError, RuntimeError):
    """A concrete group exceeds the multiplication-table limit."""


class ConstructionError(CrossedSqError, ValueError):
    """Input data violates the precondition of a construction."""
