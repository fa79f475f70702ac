"""Exception types shared across the package."""


class PolycircError(Exception):
    """Base class for all package-specific errors."""


class DimensionMismatchError(PolycircError):
    """Operands live in different ambient dimensions."""


class ZeroRowError(PolycircError):
    """An all-zero coefficient vector was used where a hyperplane is required."""


class UnboundedPolytopeError(PolycircError):
    """A single polyhedron was unbounded where a bounded one is required."""


class UnboundedRegionError(PolycircError):
    """A selected region cell is unbounded, so its measure is infinite."""


class IlpIncompleteError(PolycircError):
    """The integer feasibility search hit its cap without a definite answer."""


class CellCapError(PolycircError):
    """Cell decomposition exceeded the configured cell-count cap."""


class TooLargeError(PolycircError):
    """A brute-force oracle was asked for more work than its guard allows."""


class CircuitParseError(PolycircError):
    """Circuit text failed to parse; carries the collected diagnostics."""

    def __init__(self, diagnostics):
        self.diagnostics = list(diagnostics)
        lines = "; ".join(str(d) for d in self.diagnostics)
        super().__init__(lines or "parse error")
