"""Exception hierarchy shared across the package."""


class SliceLabError(Exception):
    """Base class for all slicelab errors."""


class ConfigError(SliceLabError):
    """Invalid simulation configuration (bad value, missing key, bad file)."""


class TriplesParseError(SliceLabError):
    """Malformed line in a triples file."""

    def __init__(self, line_no: int, message: str):
        super().__init__(f"line {line_no}: {message}")
        self.line_no = line_no


class TripleRangeError(SliceLabError):
    """Triple coordinate outside the universe bounds."""

    def __init__(self, line_no: int, message: str):
        super().__init__(f"line {line_no}: {message}")
        self.line_no = line_no


class WindowBoundsError(SliceLabError):
    """Metric window outside the trace, or too short."""


class InvariantError(SliceLabError):
    """A runtime invariant that should be unreachable was violated."""
