"""Exception types shared across the package."""


class ParameterError(ValueError):
    """Invalid family or routine parameters."""


class ConnectivityError(ValueError):
    """A distance-based routine received a disconnected graph."""

    def __init__(self, u: int, v: int):
        super().__init__(f"graph is disconnected: no path between {u} and {v}")
        self.u = u
        self.v = v


class ParseError(ValueError):
    """Malformed graph6 or edge-list text."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (byte offset {offset})")
        self.offset = offset


class CapacityError(ValueError):
    """Request exceeds what the built-in generators are meant to handle."""


class PreconditionError(ValueError):
    """Input violates a theorem's hypothesis (e.g. a non-regular part)."""
