"""
Exception types for the girth toolkit.
The CLI maps these onto its exit codes; library code only raises them.
"""


class GirthLabError(Exception):
    """Base class for every error raised by this package."""


class DigraphError(GirthLabError, ValueError):
    """Invalid digraph construction (self-loop, bad vertex, bad parameters)."""


class WalkError(GirthLabError, ValueError):
    """A vertex sequence that is not a walk of its host, or not closed."""


class PreconditionError(GirthLabError, ValueError):
    """A checker was called on input outside its hypotheses' domain."""


class ArcListParseError(GirthLabError):
    """Malformed arc-list text. Carries the 1-based line number."""

    def __init__(self, line_no: int, reason: str):
        self.line_no = line_no
        self.reason = reason
        super().__init__(f"line {line_no}: {reason}")


class SearchSpaceError(GirthLabError):
    """Requested enumeration is larger than the exhaustive cap."""

    def __init__(self, message: str, space_size: int):
        self.space_size = space_size
        super().__init__(f"{message} (space size {space_size})")
