"""Exception hierarchy.

Structural problems (a malformed table, a corrupt structure) are kept apart
from failed hypotheses, and both are kept apart from a plain "the identity does
not hold" outcome, which is never an exception but a report verdict.
"""


class PresemiringError(Exception):
    pass


class StructureError(PresemiringError, ValueError):
    """Tables or declared neutrals are malformed."""


class StructureCorruptionError(StructureError):
    """An element has two distinct complements, so the carrier is not a semiring."""


class InapplicableError(PresemiringError, ValueError):
    """A flag, property or theorem does not apply to this structure or codomain."""


class HypothesisError(PresemiringError):
    def __init__(self, hypothesis, detail=""):
        self.hypothesis = hypothesis
        self.detail = detail
        msg = f"hypothesis failed: {hypothesis}"
        if detail:
            msg += f" ({detail})"
        super().__init__(msg)


class ConditioningError(HypothesisError):
    """The conditioning value is not invertible in the codomain."""

    def __init__(self, detail=""):
        super().__init__("invertible conditioning value", detail)


class DomainError(PresemiringError, ValueError):
    """An operand lies outside the domain of a partial operation."""


class BudgetError(PresemiringError, ValueError):
    def __init__(self, count, budget):
        self.count = count
        self.budget = budget
        super().__init__(f"enumeration of {count} functions exceeds budget {budget}")


class BoundError(PresemiringError, ValueError):
    """A number exceeds the configured arithmetic bound."""


class TheoremViolation(PresemiringError, AssertionError):
    """An internal cross-check between two evaluation routes disagreed."""
