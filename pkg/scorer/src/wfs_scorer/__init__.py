"""Ingestion adapter: (video, query) -> score trace + embedding files."""

from .config import (ADAPTIVE_SCHEDULE, DEFAULT_SCHEDULE, HISTOGRAM_MODEL_ID,
                     ScorerConfig, fps_for_duration)
from .errors import DecodeError, ModelLoadError, ScorerError
from .score import (ScoreResult, score_video, write_embedding_file,
                    write_trace_file)
from .video import extract_frames, probe_video, sample_indices

__version__ = "0.1.0"
