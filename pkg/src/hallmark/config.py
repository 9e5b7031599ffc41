"""Budgets and limits shared by the exhaustive routines.

Every exhaustive routine takes an explicit budget; the module-level values here
are only the defaults.  ``HALLMARK_BUDGET`` overrides the subgroup budget.
"""

import os


class BudgetExceeded(RuntimeError):
    """An exhaustive computation would exceed its configured budget."""


# largest degree accepted by parsers and corpus constructors
DEGREE_LIMIT = 64

# coset actions built by quotients may be larger than DEGREE_LIMIT
COSET_DEGREE_LIMIT = 4096

# cap for full element enumeration of a PermGroup
ELEMENT_CAP = 10**6

# cap on group order for building a dense multiplication table
TABLE_CAP = 5000


def _env_int(name, default):
    raw = os.environ.get(name)
    if raw is None or raw.strip() == "":
        return default
    try:
        value = int(raw)
    except ValueError:
        raise ValueError(f"{name} must be a positive integer, got {raw!r}") from None
    if value <= 0:
        raise ValueError(f"{name} must be a positive integer, got {raw!r}")
    return value


def default_budget() -> int:
    """Default cap on the number of subgroups an enumeration may discover."""
    return _env_int("HALLMARK_BUDGET", 10**5)
