"""Exception types raised by ASN Maker components."""

from typing import Optional, Tuple


class AsnMakerError(Exception):
    """Base class for all toolkit errors."""


class GraphFormatError(AsnMakerError, ValueError):
    """Raised when an edge list or cover file cannot be parsed or is rejected."""

    def __init__(self, message: str, line_number: Optional[int] = None) -> None:
        if line_number is not None:
            message = f"line {line_number}: {message}"
        super().__init__(message)
        self.line_number = line_number


class CoverRangeError(AsnMakerError, ValueError):
    """Raised when a cover names a node outside the graph."""


class ContractError(AsnMakerError):
    """Raised when an operation is called outside its precondition."""


class GenerationError(AsnMakerError):
    """Raised when benchmark parameters cannot be realized."""

    def __init__(self, constraint: str, attempts: int) -> None:
        super().__init__(
            f"benchmark generation failed after {attempts} attempts: {constraint}"
        )
        self.constraint = constraint
        self.attempts = attempts


class AlgorithmError(AsnMakerError):
    """Raised when a detector cannot produce a cover."""


class DisconnectedPairError(AsnMakerError, ValueError):
    """Raised when a path length is requested between disconnected nodes."""

    def __init__(self, pair: Tuple[object, object]) -> None:
        super().__init__(f"nodes {pair[0]!r} and {pair[1]!r} are not connected")
        self.pair = pair


class ConfigError(AsnMakerError, ValueError):
    """Raised for invalid pipeline configuration."""


class StageError(AsnMakerError):
    """Raised when a pipeline stage cannot complete."""

    def __init__(self, stage: str, message: str) -> None:
        super().__init__(f"stage '{stage}' failed: {message}")
        self.stage = stage


class AlgorithmTimeoutError(AlgorithmError):
    """Raised when an external detector exceeds its time limit."""

    def __init__(self, algorithm: str, timeout: float) -> None:
        super().__init__(f"algorithm '{algorithm}' timed out after {timeout:g}s")
        self.algorithm = algorithm
        self.timeout = timeout
