"""Process-wide defaults for dense-construction and enumeration caps."""

import os

DEFAULT_ENTRY_BUDGET = 10**8
DEFAULT_ENUM_BUDGET = 10**8
BUDGET_ENV = "HYPERQUASI_BUDGET"


def entry_budget(budget=None) -> int:
    """Resolve a dense-entry cap: explicit value, then the env override, then the default."""
    if budget is not None:
        return int(budget)
    env = os.environ.get(BUDGET_ENV)
    if env:
        return int(float(env))
    return DEFAULT_ENTRY_BUDGET
