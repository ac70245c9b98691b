"""Exception hierarchy for the engine.

Every error carries the process exit code the CLI uses when it escapes.
"""


class DedekindError(Exception):
    """Base exception for engine errors."""

    exit_code = 1
    kind = "error"


class ParseError(DedekindError):
    """Raised when text or JSON input cannot be parsed."""

    exit_code = 2
    kind = "parse"


class PreconditionError(DedekindError):
    """Raised when an argument violates an operation's precondition (e.g. eps <= 0)."""

    exit_code = 2
    kind = "validation"


class MathematicalError(DedekindError):
    """Raised when a mathematical precondition fails (reducible polynomial, zero ideal...)."""

    exit_code = 3
    kind = "math"


class ReducibleError(MathematicalError):
    """Raised when a defining polynomial is reducible. `witness` is a factor or root."""

    kind = "reducible"

    def __init__(self, message: str, witness: str | None = None):
        super().__init__(message)
        self.witness = witness


class NotIntegralError(MathematicalError):
    """Raised when an element expected to be integral is not."""

    kind = "not-integral"


class NotInOrderError(MathematicalError):
    """Raised when an element does not lie in the order it is used with."""

    kind = "not-in-order"


class UnsupportedError(DedekindError):
    """Raised for requests outside the exactly-computable scope."""

    exit_code = 4
    kind = "unsupported"


class InvariantViolation(DedekindError):
    """Raised when an internal certificate fails. Always a bug."""

    exit_code = 1
    kind = "invariant"
