"""Exception hierarchy shared by all growthlab modules.

The command line interface maps these onto process exit codes:
configuration and argument problems exit with 2, exhausted enumeration
budgets with 3, and violated invariants or failed verification checks
with 4.
"""

from __future__ import annotations


class GrowthLabError(Exception):
    """Base class for all errors raised by this package."""


class ConfigError(GrowthLabError):
    """Malformed or inconsistent configuration input.

    Carries the offending line number and field name when known, so the
    CLI can point at the exact location instead of crashing.
    """

    def __init__(self, message: str, line: int | None = None, field: str | None = None):
        self.line = line
        self.field = field
        prefix = ""
        if line is not None:
            prefix += f"line {line}: "
        if field is not None:
            prefix += f"field '{field}': "
        super().__init__(prefix + message)


class ArgumentError(GrowthLabError):
    """A parameter value violates an operation's precondition."""


class StructuralError(GrowthLabError):
    """An element or matrix does not satisfy the structural requirements
    of its group family (wrong rank, non-unimodular matrix, family
    mismatch, and the like)."""


class BudgetExceededError(GrowthLabError):
    """Ball enumeration hit its element budget.

    ``last_radius`` is the largest radius whose sphere was completed;
    ``partial`` holds the table truncated to that radius when one could
    be salvaged.
    """

    def __init__(self, message: str, last_radius: int, partial=None):
        self.last_radius = last_radius
        self.partial = partial
        super().__init__(message)


class CheckFailure(GrowthLabError):
    """A verified invariant or acceptance check did not hold.

    ``context`` carries whatever identifies the failure (an offending
    t value, a mismatching index, ...).
    """

    def __init__(self, message: str, context=None):
        self.context = context
        super().__init__(message)
