"""Exception hierarchy shared by every module."""


class HopfTwistError(Exception):
    pass


class UsageError(HopfTwistError):
    """Incompatible operands, bad indices, unknown names."""


class DomainError(HopfTwistError):
    """Operation undefined for the given value (e.g. exp with constant term)."""


class ResourceError(HopfTwistError):
    """A configured size bound (word degree, rewrite budget) was exceeded."""


class ValidationError(HopfTwistError):
    """Input structure failed its load-time checks."""

    def __init__(self, message, violations=()):
        super().__init__(message)
        self.violations = list(violations)


class InvariantViolation(HopfTwistError):
    """Two routes that must agree did not. Always an engine bug."""


class ParseError(UsageError):
    def __init__(self, message, line=1, column=1):
        super().__init__(f"{message} (line {line}, column {column})")
        self.line = line
        self.column = column


class PreconditionError(HopfTwistError):
    """A mathematical hypothesis of an operation does not hold for its input."""
