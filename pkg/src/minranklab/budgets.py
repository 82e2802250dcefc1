"""Explicit work budgets: exceeding one is a refusal, never a silent downgrade."""

from __future__ import annotations


class BudgetExceededError(RuntimeError):
    """Raised when an exact computation would exceed its work budget."""

    def __init__(self, message: str, estimate: int, budget: int) -> None:
        super().__init__(f"{message} (estimated work {estimate}, budget {budget})")
        self.estimate = estimate
        self.budget = budget


DEFAULT_SOLVER_BUDGET = 10_000_000
DEFAULT_ENUMERATION_BUDGET = 1 << 17
DEFAULT_VERTEX_BUDGET = 100_000


def gaussian_binomial(n: int, k: int, q: int) -> int:
    """Number of k-dimensional subspaces of an n-dimensional space over GF(q)."""
    if k < 0 or k > n:
        return 0
    num = 1
    den = 1
    for i in range(k):
        num *= q ** (n - i) - 1
        den *= q ** (i + 1) - 1
    assert num % den == 0
    return num // den


def check_budget(estimate: int, budget: int, what: str) -> None:
    if estimate > budget:
        raise BudgetExceededError(f"{what} refused", estimate, budget)
