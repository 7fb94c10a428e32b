"""Scorer configuration: sampling schedule and model selection."""
from __future__ import annotations

import math
from dataclasses import dataclass

# (max_duration_seconds, fps): a video of duration d samples at the fps of
# the first entry whose max_duration is >= d
DEFAULT_SCHEDULE: tuple[tuple[float, float], ...] = ((math.inf, 1.0),)
ADAPTIVE_SCHEDULE: tuple[tuple[float, float], ...] = (
    (180.0, 1.0),     # short clips keep full 1 fps coverage
    (900.0, 0.5),
    (math.inf, 0.25),
)

HISTOGRAM_MODEL_ID = "histogram-v1"


@dataclass(frozen=True)
class ScorerConfig:
    fps_schedule: tuple[tuple[float, float], ...] = DEFAULT_SCHEDULE
    model_id: str = HISTOGRAM_MODEL_ID
    batch_size: int = 8
    device: str = "cpu"

    def __post_init__(self):
        schedule = tuple((float(d), float(f)) for d, f in self.fps_schedule)
        object.__setattr__(self, "fps_schedule", schedule)
        if not schedule:
            raise ValueError("fps_schedule must not be empty")
        if any(f <= 0 for _, f in schedule):
            raise ValueError("every schedule fps must be > 0")
        durations = [d for d, _ in schedule]
        if durations != sorted(durations):
            raise ValueError("fps_schedule must be sorted by max_duration")
        if durations[-1] != math.inf:
            raise ValueError("last schedule entry must cover all durations (inf)")
        if self.batch_size < 1:
            raise ValueError("batch_size must be >= 1")


def fps_for_duration(schedule: tuple[tuple[float, float], ...],
                     duration: float) -> float:
    """Sampling rate of the first schedule entry covering this duration."""
    for max_duration, fps in schedule:
        if max_duration >= duration:
            return fps
    return schedule[-1][1]
