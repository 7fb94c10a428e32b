"""Frame extraction at a fixed sampling rate."""
from __future__ import annotations

import math
from pathlib import Path

import cv2
import numpy as np

from .errors import DecodeError


def probe_video(path) -> tuple[int, float, float]:
    """(frame_count, native_fps, duration_seconds) of a decodable video."""
    if not Path(path).exists():
        raise DecodeError(f"{path}: no such file")
    cap = cv2.VideoCapture(str(path))
    try:
        if not cap.isOpened():
            raise DecodeError(f"{path}: cannot open video")
        frame_count = int(cap.get(cv2.CAP_PROP_FRAME_COUNT))
        native_fps = float(cap.get(cv2.CAP_PROP_FPS))
        if frame_count <= 0 or native_fps <= 0:
            raise DecodeError(f"{path}: no decodable frames "
                              f"(frames={frame_count}, fps={native_fps})")
        return frame_count, native_fps, frame_count / native_fps
    finally:
        cap.release()


def sample_indices(frame_count: int, native_fps: float,
                   sample_fps: float) -> list[int]:
    """Source frame numbers at t = 0, 1/fps, 2/fps, ... up to the duration.

    Indices are clamped to the last frame and deduplicated so the result is
    strictly increasing.
    """
    duration = frame_count / native_fps
    steps = int(math.floor(duration * sample_fps))
    out: list[int] = []
    for j in range(steps + 1):
        idx = min(frame_count - 1, round(j * native_fps / sample_fps))
        if not out or idx > out[-1]:
            out.append(idx)
    return out


def extract_frames(path, sample_fps: float) -> tuple[list[int], list[np.ndarray]]:
    """Decode the frames at the sampled indices (single sequential pass)."""
    frame_count, native_fps, _ = probe_video(path)
    wanted = sample_indices(frame_count, native_fps, sample_fps)
    cap = cv2.VideoCapture(str(path))
    frames: list[np.ndarray] = []
    indices: list[int] = []
    try:
        want_pos = 0
        for pos in range(frame_count):
            ok, frame = cap.read()
            if not ok:
                break
            if want_pos < len(wanted) and pos == wanted[want_pos]:
                frames.append(frame)
                indices.append(pos)
                want_pos += 1
        if not frames:
            raise DecodeError(f"{path}: no frames decoded")
    finally:
        cap.release()
    return indices, frames
