"""Video scoring and emission of the pipeline's input files.

The writers below implement the published interchange contracts of the
selection pipeline so the scorer stays decoupled from it: a version-1 JSON
trace document and a ``WFSE`` binary embedding blob (little-endian u32 N
and D followed by N*D little-endian float32, row-major).
"""
from __future__ import annotations

import json
import struct
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .backends import get_backend
from .config import ScorerConfig, fps_for_duration
from .video import extract_frames, probe_video


@dataclass(frozen=True)
class ScoreResult:
    video_id: str
    query: str
    sample_fps: float
    frame_indices: tuple[int, ...]
    scores: tuple[float, ...]
    embeddings: np.ndarray          # N x D float32, unit rows
    score_kind: str
    model_id: str


def score_video(video_path, query: str, config: ScorerConfig) -> ScoreResult:
    """Sample frames per the fps schedule and score them against the query."""
    _, _, duration = probe_video(video_path)
    sample_fps = fps_for_duration(config.fps_schedule, duration)
    indices, frames = extract_frames(video_path, sample_fps)
    backend = get_backend(config)
    scores, embeddings = backend.score_and_embed(frames, query)
    return ScoreResult(
        video_id=Path(video_path).stem,
        query=query,
        sample_fps=sample_fps,
        frame_indices=tuple(indices),
        scores=tuple(float(s) for s in scores),
        embeddings=embeddings,
        score_kind=backend.score_kind,
        model_id=config.model_id,
    )


def write_trace_file(result: ScoreResult, path) -> None:
    doc = {
        "version": 1,
        "video_id": result.video_id,
        "query": result.query,
        "fps": result.sample_fps,
        "frame_indices": list(result.frame_indices),
        "scores": list(result.scores),
        "meta": {
            "model_id": result.model_id,
            "score_kind": result.score_kind,
        },
    }
    Path(path).write_text(json.dumps(doc, indent=2) + "\n", encoding="utf-8")


def write_embedding_file(result: ScoreResult, path) -> None:
    matrix = np.ascontiguousarray(result.embeddings, dtype="<f4")
    n, d = matrix.shape
    Path(path).write_bytes(b"WFSE" + struct.pack("<II", n, d) + matrix.tobytes())
