class ToolkitError(Exception):
    """Base class for computational failures (as opposed to malformed input)."""


class OffSphereError(ToolkitError):
    """A base point does not lie exactly on the unit sphere."""


class DegenerateBasePointError(ToolkitError):
    """A base point has vanishing last coordinate, where the standard CR fields degenerate."""


class NotTransversalError(ToolkitError):
    """The first jet span at a point does not have dimension n + 1."""


class InvariantViolation(ToolkitError):
    """A proven bound was breached; this indicates a bug, never bad input."""


class NotASphereMapError(ToolkitError):
    """A map does not send the unit sphere into the target sphere."""
