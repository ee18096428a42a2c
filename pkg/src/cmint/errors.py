"""Exception types shared across the package."""

from __future__ import annotations


class CmintError(Exception):
    """Base class for package-specific errors."""


class InputError(CmintError):
    """Arguments fall outside an operation's contract."""


class FieldRejected(InputError):
    """A CM field description failed validation.

    `reason` is a stable machine-readable slug, `detail` is for humans.
    """

    def __init__(self, reason: str, detail: str = ""):
        self.reason = reason
        self.detail = detail
        super().__init__(f"{reason}: {detail}" if detail else reason)


class InternalConsistencyError(CmintError):
    """Two independently computed quantities disagree, or a guaranteed
    structural property failed to hold. Always a bug, never bad input."""
