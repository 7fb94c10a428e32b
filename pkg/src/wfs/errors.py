"""Exception types shared across the package."""


class WfsError(Exception):
    """Base class for all errors raised by this package."""


class LevelTooDeep(WfsError):
    """Requested decomposition level exceeds the feasible maximum."""


class InconsistentCoefficients(WfsError):
    """Coefficient band lengths contradict the recorded length chain."""


class NotAPeak(WfsError):
    """Prominence queried at an index that is not a strict local maximum."""


class EmptySegmentation(WfsError):
    """Segment scoring called with no segments."""


class ZeroVector(WfsError):
    """Cosine similarity is undefined for a zero-norm vector."""


class BudgetExceedsSegment(WfsError):
    """Per-segment budget larger than the number of frames in the segment."""


class AlignmentError(WfsError):
    """Embedding matrix is not row-aligned with the relevance trace."""


class ParseError(WfsError):
    """Input document is structurally malformed."""


class ValidationError(WfsError):
    """Input document parsed but violates an invariant."""


class MagicMismatch(WfsError):
    """Embedding file does not start with the expected magic bytes."""


class TruncatedFile(WfsError):
    """Embedding file size disagrees with its declared dimensions."""


class InfeasibleConfig(WfsError):
    """Synthetic-trace configuration cannot be realised."""
