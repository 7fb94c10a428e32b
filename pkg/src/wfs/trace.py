"""Per-frame relevance traces: the pipeline's sole mandatory input."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class RelevanceTrace:
    """A per-frame query-relevance signal with sampling metadata.

    ``scores[i]`` is the relevance of the candidate frame whose source-frame
    number is ``frame_indices[i]``; ``fps`` records the candidate sampling
    rate used to produce the trace.
    """

    scores: tuple[float, ...]
    frame_indices: tuple[int, ...]
    fps: float = 1.0
    video_id: str = ""

    def __post_init__(self):
        object.__setattr__(self, "scores", tuple(float(s) for s in self.scores))
        object.__setattr__(self, "frame_indices",
                           tuple(int(i) for i in self.frame_indices))
        if len(self.scores) == 0:
            raise ValueError("trace must contain at least one frame")
        if len(self.scores) != len(self.frame_indices):
            raise ValueError("scores and frame_indices must have equal length")
        if any(b <= a for a, b in zip(self.frame_indices, self.frame_indices[1:])):
            raise ValueError("frame_indices must be strictly increasing")

    def __len__(self) -> int:
        return len(self.scores)


def normalized_scores(trace: RelevanceTrace) -> np.ndarray:
    """Min-max normalize the trace to [0, 1].

    A constant trace maps every sample to 0.5: it carries no ordering
    information, so the midpoint keeps downstream weighted sums bounded
    the same way as a genuinely varying trace.
    """
    s = np.asarray(trace.scores, dtype=np.float64)
    lo = s.min()
    hi = s.max()
    if hi == lo:
        return np.full(s.shape, 0.5)
    return (s - lo) / (hi - lo)
