from __future__ import annotations

__all__ = [
    "TwistcodeError",
    "InputError",
    "InconsistentPattern",
    "BudgetExceeded",
    "AlreadyCheckerboardable",
]


class TwistcodeError(Exception):
    """Base class for library errors."""


class InputError(TwistcodeError, ValueError):
    """Malformed or invalid user-supplied data (CLI exit code 2)."""


class InconsistentPattern(TwistcodeError):
    """No Pauli realizes the requested commutation pattern."""


class BudgetExceeded(TwistcodeError):
    """An exact search would exceed its step budget."""


class AlreadyCheckerboardable(TwistcodeError):
    """Doubling requested on a graph that needs no defect."""
