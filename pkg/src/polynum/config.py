"""Enumeration budgets for the exponential oracle paths.

The recurrence path is never budgeted.  ``POLYNUM_BUDGET`` may override the
defaults as a comma separated list such as ``"max_n=10,shelling_nodes=200000"``.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, fields, replace


class BudgetExceeded(RuntimeError):
    """An oracle or search was asked to go past its configured budget."""


@dataclass(frozen=True)
class Budget:
    max_n: int = 12
    max_dim: int = 5
    oracle_vertices: int = 14
    shelling_nodes: int = 10**6


def _from_env(raw: str | None) -> Budget:
    budget = Budget()
    if not raw:
        return budget
    known = {f.name for f in fields(Budget)}
    updates = {}
    for item in raw.split(","):
        item = item.strip()
        if not item:
            continue
        if "=" not in item:
            # a bare integer overrides the n budget
            updates["max_n"] = int(item)
            continue
        key, value = (s.strip() for s in item.split("=", 1))
        if key not in known:
            raise ValueError(f"unknown budget key {key!r} in POLYNUM_BUDGET")
        updates[key] = int(value)
    return replace(budget, **updates)


def current_budget() -> Budget:
    return _from_env(os.environ.get("POLYNUM_BUDGET"))


def check_budget(value: int, limit: int, what: str) -> None:
    if value > limit:
        raise BudgetExceeded(f"{what}={value} exceeds budget {limit}")
