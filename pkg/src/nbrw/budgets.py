"""Work-budget resolution shared by enumeration-heavy operations."""

from __future__ import annotations

import os

DEFAULT_WORK_BUDGET = 2_000_000


def resolve_budget(budget: int | None = None) -> int:
    """Explicit argument wins, then the NBRW_BUDGET environment variable,
    then the package default."""
    if budget is not None:
        return budget
    env = os.environ.get("NBRW_BUDGET")
    return int(env) if env else DEFAULT_WORK_BUDGET
