"""Exception types shared across the package."""


class DomainError(ValueError):
    """Raised when parameters fall outside an operation's stated domain."""


class BudgetExceeded(RuntimeError):
    """Raised before starting work whose search space exceeds the budget."""

    def __init__(self, needed: int, budget: int, what: str = "candidates"):
        self.needed = needed
        self.budget = budget
        super().__init__(f"{what}: {needed} exceeds budget {budget}")


class Defect(AssertionError):
    """An internal consistency check failed.

    Raised explicitly (not via ``assert``) so it survives ``python -O``.
    """
