"""Exception hierarchy.

Input problems derive from ``InvalidInput`` (also a ``ValueError``); broken
internal guarantees derive from ``InternalError`` (also a ``RuntimeError``).
"""


class ShapeWilfError(Exception):
    pass


class InvalidInput(ShapeWilfError, ValueError):
    pass


class InternalError(ShapeWilfError, RuntimeError):
    pass


# diagrams and transversals

class NotWeaklyDecreasing(InvalidInput):
    pass


class NonPositiveEntry(InvalidInput):
    pass


class NotAPermutation(InvalidInput):
    pass


class CellOutsideShape(InvalidInput):
    def __init__(self, row, col, length):
        self.row = row
        self.col = col
        super().__init__(f"row {row}: column {col} lies outside the shape (row length {length})")


class ShapeHasNoTransversals(InvalidInput):
    pass


# patterns

class UnsupportedLength(InvalidInput):
    pass


class PopSyntaxError(InvalidInput):
    pass


class CycleDetected(InvalidInput):
    pass


class PositionOutOfRange(InvalidInput):
    pass


# bijection

class NotAQkSubmatrix(InvalidInput):
    pass


class NotAPkSubmatrix(InvalidInput):
    pass


class InputContainsPk(InvalidInput):
    pass


class InputContainsQk(InvalidInput):
    pass


class ConsistencyViolation(InternalError):
    pass


class SelectionIncomplete(InternalError):
    pass


class IterationCapExceeded(InternalError):
    pass
