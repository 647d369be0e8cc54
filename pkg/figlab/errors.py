"""
Exception hierarchy for figlab.
"""

from typing import Optional, Sequence


class FigLabError(Exception):
    """Base exception for all figlab errors."""
    pass


class FieldError(FigLabError):
    """Custom exception for invalid fields or field elements."""
    pass


class DimensionMismatchError(FigLabError):
    """Raised when matrix operands have incompatible shapes."""

    def __init__(self, operation: str, *shapes: Sequence[int]):
        self.operation = operation
        self.shapes = tuple(tuple(s) for s in shapes)
        rendered = ", ".join("x".join(str(d) for d in s) for s in self.shapes)
        super().__init__(f"{operation}: incompatible operands ({rendered})")


class GroupValidationError(FigLabError):
    """Raised when a Cayley table does not describe a group."""

    def __init__(self, message: str, witness: Optional[tuple] = None):
        self.witness = witness
        if witness is not None:
            message = f"{message} (witness {witness})"
        super().__init__(message)


class RepresentationError(FigLabError):
    """Raised when matrices violate a relation of the wreath presentation."""

    def __init__(self, relation: str, witness: str = ""):
        self.relation = relation
        self.witness = witness
        super().__init__(f"relation {relation} fails" + (f": {witness}" if witness else ""))


class ModuleValidationError(FigLabError):
    """Raised when a windowed module breaks its functoriality contract."""

    def __init__(self, violations: list):
        self.violations = violations
        first = violations[0] if violations else None
        summary = f"{len(violations)} violation(s)"
        if first is not None:
            summary += f", first: {first}"
        super().__init__(summary)


class NonEquivariantMapError(FigLabError):
    """Raised when a map fails to commute with the group action or transitions."""
    pass


class WindowExhaustedError(FigLabError):
    """Raised when a computation needs more degrees than the window provides."""

    def __init__(self, operation: str, needed: int, available: int):
        self.operation = operation
        self.needed = needed
        self.available = available
        super().__init__(
            f"{operation} needs window {needed}, only {available} available")


class PreconditionError(FigLabError):
    """Raised when an operation is called outside its domain."""
    pass


class ModuleFileError(FigLabError):
    """Custom exception for module file parse errors."""

    def __init__(self, path: str, location: str, message: str):
        self.path = path
        self.location = location
        super().__init__(f"{path}: {location}: {message}")


class MaxDimensionExceededError(FigLabError):
    """Raised when a single degree exceeds the configured dimension cap."""

    def __init__(self, degree: int, dim: int, cap: int):
        self.degree = degree
        self.dim = dim
        self.cap = cap
        super().__init__(
            f"degree {degree} has dimension {dim}, above FIGLAB_MAX_DIM={cap}")
