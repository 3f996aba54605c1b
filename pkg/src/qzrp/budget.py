"""Desk-scale guard shared by every exhaustive routine."""

from __future__ import annotations

import os

DEFAULT_BUDGET = 200_000


class BudgetExceeded(RuntimeError):
    def __init__(self, required: int, budget: int, what: str = "states"):
        super().__init__(f"{what}: {required} exceeds the budget {budget} "
                         f"(raise it with QZRP_BUDGET={required} or --budget)")
        self.required = required
        self.budget = budget


def current_budget(override: int | None = None) -> int:
    if override is not None:
        return override
    env = os.environ.get("QZRP_BUDGET")
    return int(env) if env else DEFAULT_BUDGET


def check_budget(required: int, budget: int | None = None, what: str = "states") -> None:
    limit = current_budget(budget)
    if required > limit:
        raise BudgetExceeded(required, limit, what)
