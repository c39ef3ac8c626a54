"""Exception hierarchy for fqwave."""

from typing import Optional, Tuple


class FqwaveError(Exception):
    """Base exception for fqwave errors."""

    pass


class InvalidModulusError(FqwaveError, ValueError):
    """Modulus is not an odd prime within the supported range."""

    def __init__(self, q: int, reason: str):
        self.q = q
        super().__init__(f"invalid modulus q={q}: {reason}")


class ModulusClassError(FqwaveError):
    """Operation requires q in a specific residue class mod 4."""

    def __init__(self, q: int, required: int, detail: str = ""):
        self.q = q
        self.required = required
        message = f"q={q} ≡ {q % 4} (mod 4), operation requires q ≡ {required} (mod 4)"
        if detail:
            message = f"{message}: {detail}"
        super().__init__(message)


class ModulusMismatchError(FqwaveError):
    """Operands live over different prime fields."""

    def __init__(self, left: int, right: int):
        self.left = left
        self.right = right
        super().__init__(f"modulus mismatch: {left} != {right}")


class DimensionMismatchError(FqwaveError):
    """Operands disagree on (q, d)."""

    def __init__(self, expected: Tuple[int, int], actual: Tuple[int, int]):
        self.expected = expected
        self.actual = actual
        super().__init__(
            f"dimension mismatch: expected (q={expected[0]}, d={expected[1]}), "
            f"got (q={actual[0]}, d={actual[1]})"
        )


class PreconditionError(FqwaveError):
    """A stated precondition of an operation does not hold."""

    pass


class SingularMatrixError(PreconditionError):
    """Matrix is not invertible over F_q."""

    def __init__(self, q: int, determinant: int = 0):
        self.q = q
        self.determinant = determinant
        super().__init__(f"matrix is singular mod {q} (det ≡ {determinant})")


class OriginInSetError(PreconditionError):
    """A multiplicative tiling set must not contain the origin."""

    def __init__(self):
        super().__init__(
            "set contains the origin; a multiplicative tiling set does not include 0"
        )


class CardinalityError(PreconditionError):
    """Set has the wrong number of points."""

    def __init__(self, expected: int, actual: int, what: str = "set"):
        self.expected = expected
        self.actual = actual
        super().__init__(f"{what} must have {expected} points, got {actual}")


class NotAGraphError(PreconditionError):
    """Set is not the graph of a function over any basis."""

    pass


class EmptySetError(PreconditionError):
    """Operation needs a nonempty set."""

    pass


class SearchBudgetExceededError(FqwaveError):
    """Exhaustive search exceeded its budget."""

    def __init__(self, budget: int, detail: Optional[str] = None):
        self.budget = budget
        message = f"search budget of {budget} exceeded"
        if detail:
            message = f"{message}: {detail}"
        super().__init__(message)


class ReportFormatError(FqwaveError):
    """Malformed JSON document."""

    def __init__(self, message: str, path: Optional[str] = None):
        self.path = path
        if path:
            message = f"{path}: {message}"
        super().__init__(message)
