"""Exception types raised across the package."""


class PlanarspError(Exception):
    """Base class for all package-specific errors."""


class GraphFormatError(PlanarspError):
    """Malformed graph input: self-loops, repeated arcs, bad indices, bad file syntax."""


class InvalidRotation(GraphFormatError):
    """A vertex rotation is not a permutation of its incident darts."""


class NonPlanarEmbedding(PlanarspError):
    """The rotation system fails the Euler face-count check."""


class NegativeLength(PlanarspError):
    """A shortest-path routine requiring non-negative lengths saw a negative one."""


class NotStaircase(PlanarspError):
    """Defined entries of a partial matrix are not row/column contiguous."""


class ColumnOutOfRange(PlanarspError):
    """RMQ column index outside the structure's bounds."""


class ReactivationAttempt(PlanarspError):
    """activate called on a decremental-only range-minimum structure."""


class MongeViolation(PlanarspError):
    """A quadrangle inequality that must hold was violated."""


class DoubleActivate(PlanarspError):
    """A heap row was activated twice in a once-per-row heap."""


class NotRelaxed(PlanarspError):
    """Child query for a tail vertex that was never relaxed in this heap."""


class AlreadyInactive(PlanarspError):
    """Extraction of a copy that is already inactive."""


class KeyIncrease(PlanarspError):
    """decrease-key invoked with a key above the current one."""


class SourceNotBoundary(PlanarspError):
    """Shortest-path source is not a vertex of the distance graph."""


class FaceNotFound(PlanarspError):
    """Named face does not exist in the graph."""


class NegativeResidual(PlanarspError):
    """A residual capacity that must stay non-negative went negative."""


class CyclicAfterCancellation(PlanarspError):
    """Positive-flow cycles survived cancellation (internal bug signal)."""


class DivisionInvariantError(PlanarspError):
    """A structural invariant of a graph division was violated."""


class BadParams(PlanarspError):
    """Invalid command-line or generator parameters."""
