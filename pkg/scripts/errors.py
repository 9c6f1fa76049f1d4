"""Exception types shared by the fracsep modules.

Each error carries a short ``kind`` used in CLI diagnostics and the exit
code the CLI returns when the error escapes a command.
"""
from typing import Optional


class FracsepError(Exception):
    kind = "error"
    exit_code = 2


class DomainError(FracsepError, ValueError):
    """Argument outside the operation's domain (b not in (0,1), tol <= 0, ...)."""
    kind = "domain"


class InvalidWordError(FracsepError, ValueError):
    kind = "invalid-word"


class NotInvariantError(FracsepError):
    """Hull built from fixed points is not mapped into itself."""
    kind = "not-invariant"


class UnsupportedOrientationError(FracsepError):
    kind = "unsupported-orientation"


class PreconditionError(FracsepError):
    """A theorem hypothesis the algorithm relies on does not hold."""
    kind = "precondition"


class UsageError(FracsepError):
    kind = "usage"


class BudgetExceededError(FracsepError):
    kind = "budget-exceeded"
    exit_code = 4

    def __init__(self, budget: int, count: Optional[int] = None, what: str = "words"):
        self.budget = budget
        self.count = count
        self.what = what
        seen = f" (reached {count})" if count is not None else ""
        super().__init__(f"{what} budget of {budget} exceeded{seen}")

    def __reduce__(self):
        return (type(self), (self.budget, self.count, self.what))
