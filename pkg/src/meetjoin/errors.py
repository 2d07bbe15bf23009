"""Exception types shared across the package."""


class MeetJoinError(Exception):
    """Base class for all library errors."""


class CycleError(MeetJoinError):
    """The supplied relation is not antisymmetric once transitively closed."""


class NoMeetError(MeetJoinError):
    """A pair has no greatest common lower bound in the ambient poset."""


class NoJoinError(MeetJoinError):
    """A pair has no least common upper bound in the ambient poset."""


class CharacterizationMismatch(MeetJoinError):
    """Independently computed equivalent tests disagreed; an implementation bug."""


class ExactArithmeticError(MeetJoinError):
    """An exact-rational computation received non-rational values."""


class MissingValueError(MeetJoinError):
    """A function table does not cover every required element."""

    def __init__(self, labels):
        self.labels = tuple(labels)
        super().__init__("no value for: " + ", ".join(map(str, self.labels)))


class DuplicateError(MeetJoinError):
    """A label occurs more than once where uniqueness is required."""


class NotClosedError(MeetJoinError):
    """The set is not meet closed (or join closed) as required."""


class NotSupersetError(MeetJoinError):
    """The candidate set does not contain the base set and its meets or joins."""


class ConvergenceError(MeetJoinError):
    """The eigensolver did not reach the target off-diagonal norm."""


class MonotonicityError(MeetJoinError):
    """The function lacks the order property needed for reindexing."""


class HypothesisError(MeetJoinError):
    """A bound hypothesis fails and strict checking was requested."""


class SupportError(MeetJoinError):
    """A test vector lies outside the admissible coordinate subspace."""


class PreconditionError(MeetJoinError):
    """A result's precondition fails for the given input."""


class DeskScaleError(MeetJoinError):
    """An input would generate a structure beyond the configured size cap."""
