"""Exception hierarchy for the term toolkit."""

from __future__ import annotations

from typing import Any


class TermbenchError(Exception):
    """Base class for every error raised by the toolkit."""


class ContractViolation(TermbenchError):
    """An accelerated path disagreed with its reference path, or a caller contract failed.

    :param primitive: Name of the primitive or routine that detected the violation.
    :param accelerated: Result observed on the accelerated path.
    :param reference: Result observed on the reference path.
    :param detail: Optional free-text description of the broken contract.
    """

    def __init__(self, primitive: str, accelerated: Any = None, reference: Any = None, detail: str = ""):
        self.primitive = primitive
        self.accelerated = accelerated
        self.reference = reference
        self.detail = detail
        message = f"{primitive}: accelerated={accelerated!r} reference={reference!r}"
        if detail:
            message = f"{message} ({detail})"
        super().__init__(message)


class BudgetExhausted(TermbenchError):
    """The node-visit budget of a traversal ran out.

    :param budget: The budget that was exceeded.
    """

    def __init__(self, budget: int):
        self.budget = budget
        super().__init__(f"node-visit budget of {budget} exhausted")
