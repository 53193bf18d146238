"""Exception hierarchy shared by the library and the CLI exit-code mapping."""


class LatticeError(Exception):
    """Base class for all errors raised by latticeroots."""


class UsageError(LatticeError, ValueError):
    """Bad input from the caller (CLI exit code 1)."""


class CeilingExceeded(UsageError):
    """A brute-force search box is larger than the configured ceiling."""

    def __init__(self, bound: int, ceiling: int):
        self.bound = bound
        self.ceiling = ceiling
        super().__init__(
            f"brute-force box has {bound} candidates, above the ceiling {ceiling}"
        )


class InvariantViolation(LatticeError, RuntimeError):
    """An internal consistency check failed (CLI exit code 2)."""


class VerificationFailure(LatticeError):
    """A verification report found a mismatch (CLI exit code 3)."""
