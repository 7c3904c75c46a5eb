"""Node-visit counting shared by every traversal.

Acceptance claims are stated in node visits, so each work-list loop ticks a
:class:`VisitCounter`. Counters are passed explicitly and owned by one call.
"""

from __future__ import annotations

from typing import Optional

from .exceptions import BudgetExhausted


class VisitCounter:
    """Count node visits and enforce an optional budget.

    :param budget: Maximum number of visits, or ``None`` for no limit.
    """

    __slots__ = ("visits", "budget")

    def __init__(self, budget: Optional[int] = None):
        self.visits = 0
        self.budget = budget

    def tick(self, amount: int = 1) -> None:
        """Record visits, raising once the budget is exceeded.

        :param amount: Number of visits to record.
        :return: None
        :raises BudgetExhausted: When the running total passes the budget.
        """
        self.visits += amount
        if self.budget is not None and self.visits > self.budget:
            raise BudgetExhausted(self.budget)

    @property
    def exhausted(self) -> bool:
        return self.budget is not None and self.visits > self.budget

    def __repr__(self) -> str:
        return f"VisitCounter(visits={self.visits}, budget={self.budget})"


def ensure_counter(counter: Optional[VisitCounter]) -> VisitCounter:
    """Return ``counter`` or a fresh unlimited one.

    :param counter: Caller-provided counter, possibly ``None``.
    :return: A usable counter.
    :rtype: VisitCounter
    """
    return counter if counter is not None else VisitCounter()
