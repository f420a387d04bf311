"""Exception hierarchy shared by all modules."""


class ExpMatError(Exception):
    """Base class for every error raised by expmat."""


class InvalidMatrixError(ExpMatError, ValueError):
    """Input is not a square, zero-diagonal, non-negative integer matrix."""


class DimensionMismatchError(ExpMatError, ValueError):
    pass


class ImproperSubsetError(ExpMatError, ValueError):
    """An index set is empty, the full set, or out of range."""


class ZeroRowError(ExpMatError, ValueError):
    pass


class NoBlockError(ExpMatError, ValueError):
    pass


class BudgetExceededError(ExpMatError, RuntimeError):
    """A search visited more nodes than its budget allows."""

    def __init__(self, budget, message=None):
        self.budget = budget
        super().__init__(message or f"search budget of {budget} nodes exceeded")


class TheoremViolationError(ExpMatError, RuntimeError):
    """A computation contradicted a proven statement about exponent matrices."""


class ParseError(ExpMatError, ValueError):
    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f"line {line}"
            if column is not None:
                where += f", column {column}"
            where += ": "
        super().__init__(where + message)
