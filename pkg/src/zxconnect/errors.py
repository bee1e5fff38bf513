"""Exception types shared across the package."""


class GraphParseError(ValueError):
    def __init__(self, line_number: int, line: str, reason: str = "expected two nonnegative integers"):
        self.line_number = line_number
        self.line = line
        super().__init__(f"line {line_number}: {reason}: {line!r}")


class NodeRangeError(ValueError):
    pass


class CapacityError(ValueError):
    """Raised when a dense representation would exceed the configured qubit/leg cap."""


class DissipationError(RuntimeError):
    """The projected state has zero norm, so the non-unitary gate surely fails."""

    def __init__(self, gate_index: int | None):
        self.gate_index = gate_index
        where = "" if gate_index is None else f" at gate {gate_index}"
        super().__init__(f"state fully dissipated{where}")


class InfeasibleError(ValueError):
    pass
