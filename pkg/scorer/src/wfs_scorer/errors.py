"""Scorer error types."""


class ScorerError(Exception):
    """Base class for scorer failures."""


class DecodeError(ScorerError):
    """Video file missing, unreadable, or empty."""


class ModelLoadError(ScorerError):
    """Scoring model could not be loaded."""
