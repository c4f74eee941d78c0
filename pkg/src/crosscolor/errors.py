"""Exception vocabulary shared across the package."""


class InvalidInstanceError(ValueError):
    """Input failed structural or mode validation."""


class Graph6Error(InvalidInstanceError):
    """Malformed graph6 bytes.  Carries the byte offset where decoding failed."""

    def __init__(self, message: str, offset: int | None = None):
        self.offset = offset
        if offset is not None:
            message = f"{message} (byte {offset})"
        super().__init__(message)


class NonplanarGraphError(ValueError):
    """An embedding was demanded of a graph that has none."""


class TaskPreconditionError(ValueError):
    """A boundary colouring task violates the shape its recursion relies on."""


class RuleInapplicable(Exception):
    """Internal punt: a reduction or endgame routine declined the position.

    Raised when preconditions that the calling code could not cheaply check
    turn out not to hold (drawability, measure decrease, blocker counts).
    The dispatcher treats it as "try the next candidate", never as failure.
    """


class BudgetExceededError(RuntimeError):
    """Backtracking search hit its node budget before deciding."""


class PipelineIncompleteError(RuntimeError):
    """The constructive pipeline punted and fallback was disabled."""


class TheoremViolationError(AssertionError):
    """A mode-valid instance admitted no coloring at all.

    This should be impossible; if it fires the instance is a counterexample
    to the guarantee the solver is built on (or, far more likely, a bug).
    """
