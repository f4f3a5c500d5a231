"""Exception hierarchy shared by all modules."""

from __future__ import annotations


class ChordpartError(Exception):
    """Base class for every error raised by the package."""


class GraphError(ChordpartError, ValueError):
    """Malformed graph input: out-of-range id, self-loop, bad vertex set."""


class PartitionError(ChordpartError, ValueError):
    """A vertex family is not a partition of its graph (overlap, gap, empty part)."""


class DecompositionError(ChordpartError, ValueError):
    """Tree-decomposition composition received inconsistent inputs."""


class ResourceCapError(ChordpartError, RuntimeError):
    """A configured size/budget cap was exceeded.

    Raised instead of falling back to a weaker computation, so callers never
    receive a silently degraded answer.
    """

    def __init__(self, what: str, size: int, cap: int, detail: str = "") -> None:
        self.what = what
        self.size = size
        self.cap = cap
        self.detail = detail
        msg = f"{what}: size {size} exceeds cap {cap}"
        if detail:
            msg += f" ({detail})"
        super().__init__(msg)


class ParseError(ChordpartError, ValueError):
    """Serialized input could not be parsed; ``position`` is a byte offset."""

    def __init__(self, message: str, position: int) -> None:
        self.position = position
        super().__init__(f"{message} at byte {position}")


class RestrictionError(ChordpartError, ValueError):
    """The clique-neighbourhood precondition for restricting a partition fails."""

    def __init__(self, component: frozenset[int], pair: tuple[int, int]) -> None:
        self.component = component
        self.pair = pair
        super().__init__(
            f"component {sorted(component)} sees non-adjacent vertices {pair[0]} and {pair[1]}"
        )
