"""Exception types shared across the toolkit."""


class ToolkitError(Exception):
    """Base class for all toolkit errors."""


class MalformedTable(ToolkitError):
    """A composition/identity table is partial, ill-typed or inconsistent."""


class BoundaryMismatch(ToolkitError):
    """Cells plugged together do not share the required boundary."""


class DanglingReference(ToolkitError):
    """A document refers to an id that was never declared."""


class UnknownCheck(ToolkitError):
    """A requested check name is not registered."""


class ParseError(ToolkitError):
    """A workspace document could not be parsed."""


class SearchBudgetExceeded(ToolkitError):
    """An exhaustive search ran out of its step budget.

    Callers that expose three-valued verdicts catch this and report
    "inconclusive" instead of letting it escape.
    """

    def __init__(self, message="search budget exceeded", steps=None):
        super().__init__(message)
        self.steps = steps
