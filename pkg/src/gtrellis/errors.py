"""Exception types shared across the package."""

from __future__ import annotations


class GTrellisError(Exception):
    """Base class for all library errors."""


class NotAGroup(GTrellisError):
    pass


class NotASubgroup(GTrellisError):
    pass


class NotNormal(GTrellisError):
    pass


class NotNormalStep(GTrellisError):
    pass


class TooLarge(GTrellisError):
    pass


class NotHomomorphism(GTrellisError):
    pass


class NotSubdirect(GTrellisError):
    pass


class NotControllable(GTrellisError):
    """The X chain stabilized at a proper subgroup of B."""

    def __init__(self, message: str, stable=None):
        super().__init__(message)
        self.stable = stable


class NotControllableMatrix(GTrellisError):
    pass


class IndexOutOfRange(GTrellisError):
    pass


class LengthMismatch(GTrellisError):
    pass


class VerificationFailed(GTrellisError):
    """A construction the theory guarantees did not check out; indicates a bug."""

    def __init__(self, message: str, witness=None):
        super().__init__(message)
        self.witness = witness


class NotInX0(GTrellisError):
    pass


class InvalidPath(GTrellisError):
    def __init__(self, message: str, position: int | None = None):
        super().__init__(message)
        self.position = position


class InitialMismatch(GTrellisError):
    pass


class FirstBranchMismatch(GTrellisError):
    pass


class ParseError(GTrellisError):
    def __init__(self, message: str, line: int | None = None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line
