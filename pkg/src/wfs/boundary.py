"""Semantic boundary detection on a change-intensity signal.

The detector finds local maxima that clear two data-driven thresholds, an
absolute height ``mean + alpha * std`` and a topographic prominence
``beta * (max - min)``, then thins them by non-maximum suppression so no two
boundaries sit closer than an adaptive minimum distance.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import NotAPeak


@dataclass(frozen=True)
class PeakParams:
    """Thresholding knobs for adaptive peak detection.

    ``height_factor`` scales the standard deviation added to the mean for
    the height gate; ``prominence_factor`` scales the dynamic range for the
    prominence gate; the minimum peak separation is
    ``max(min_distance_floor, floor(N * min_distance_fraction))``.
    """

    height_factor: float = 0.5
    prominence_factor: float = 0.05
    min_distance_floor: int = 5
    min_distance_fraction: float = 0.02

    def __post_init__(self):
        if self.height_factor < 0:
            raise ValueError("height_factor must be >= 0")
        if not 0 <= self.prominence_factor <= 1:
            raise ValueError("prominence_factor must be in [0, 1]")
        if self.min_distance_floor < 1:
            raise ValueError("min_distance_floor must be >= 1")
        if not 0 <= self.min_distance_fraction < 1:
            raise ValueError("min_distance_fraction must be in [0, 1)")

    def min_distance(self, n: int) -> int:
        return max(self.min_distance_floor, int(n * self.min_distance_fraction))


@dataclass(frozen=True)
class BoundarySet:
    """Detected boundary indices (0-based, strictly increasing, interior)."""

    boundaries: tuple[int, ...]
    signal_length: int

    def __post_init__(self):
        object.__setattr__(self, "boundaries", tuple(int(b) for b in self.boundaries))
        n = self.signal_length
        for b in self.boundaries:
            if not 1 <= b <= n - 2:
                raise ValueError(f"boundary {b} outside interior of [0, {n - 1}]")
        if any(b2 <= b1 for b1, b2 in zip(self.boundaries, self.boundaries[1:])):
            raise ValueError("boundaries must be strictly increasing")

    def __len__(self) -> int:
        return len(self.boundaries)


@dataclass(frozen=True)
class Segment:
    """A contiguous inclusive frame range [start, end] with an ordinal id."""

    start: int
    end: int
    id: int

    def __post_init__(self):
        if not 0 <= self.start <= self.end:
            raise ValueError("segment must satisfy 0 <= start <= end")

    def __len__(self) -> int:
        return self.end - self.start + 1


def change_intensity(detail_signal) -> np.ndarray:
    """Elementwise magnitude of the detail-only reconstruction."""
    x = np.asarray(detail_signal, dtype=np.float64)
    if x.ndim != 1 or len(x) < 1:
        raise ValueError("signal must be a non-empty 1-D sequence")
    return np.abs(x)


def _prominence_at(c: list[float], t: int) -> float:
    # Topographic prominence with no strictness requirement at t: walk out
    # from the peak until a strictly higher sample or the signal end, take
    # the minimum of each excursion, subtract the higher of the two bases.
    peak = c[t]
    left_base = peak
    i = t - 1
    while i >= 0 and c[i] <= peak:
        if c[i] < left_base:
            left_base = c[i]
        i -= 1
    right_base = peak
    i = t + 1
    n = len(c)
    while i < n and c[i] <= peak:
        if c[i] < right_base:
            right_base = c[i]
        i += 1
    return peak - max(left_base, right_base)


def peak_prominence(signal, peak_index: int) -> float:
    """Topographic prominence of a strict local maximum.

    Raises :class:`NotAPeak` unless
    ``signal[t-1] < signal[t] > signal[t+1]``.
    """
    c = [float(v) for v in signal]
    t = peak_index
    if not 0 < t < len(c) - 1 or not (c[t - 1] < c[t] and c[t] > c[t + 1]):
        raise NotAPeak(f"index {t} is not a strict local maximum")
    return _prominence_at(c, t)


def _candidate_peaks(c: list[float]) -> list[int]:
    """Interior local maxima; a flat-topped run contributes its leftmost sample."""
    n = len(c)
    out = []
    t = 1
    while t < n - 1:
        if c[t] > c[t - 1]:
            u = t
            while u + 1 < n and c[u + 1] == c[t]:
                u += 1
            if u + 1 < n and c[u + 1] < c[t]:
                out.append(t)
            t = u + 1
        else:
            t += 1
    return out


def _suppress(candidates: list[tuple[int, float, float]], delta_min: int) -> list[int]:
    """Greedy NMS: prominence desc, then height desc, then index asc."""
    ranked = sorted(candidates, key=lambda z: (-z[2], -z[1], z[0]))
    kept: list[int] = []
    for t, _, _ in ranked:
        if all(abs(t - b) >= delta_min for b in kept):
            kept.append(t)
    return sorted(kept)


def detect_boundaries(intensity, params: PeakParams = PeakParams()) -> BoundarySet:
    """Adaptive peak detection on a change-intensity signal.

    Signals shorter than 3 samples (or with no qualifying local maximum)
    yield the empty boundary set so that degenerate traces still flow
    through the pipeline as a single segment.
    """
    c = np.asarray(intensity, dtype=np.float64)
    if c.ndim != 1 or len(c) < 1:
        raise ValueError("signal must be a non-empty 1-D sequence")
    n = len(c)
    if n < 3:
        return BoundarySet(boundaries=(), signal_length=n)
    tau_height = c.mean() + params.height_factor * c.std()
    tau_prom = params.prominence_factor * (c.max() - c.min())
    c_list = c.tolist()
    candidates = []
    for t in _candidate_peaks(c_list):
        height = c_list[t]
        if height >= tau_height:
            prom = _prominence_at(c_list, t)
            if prom >= tau_prom:
                candidates.append((t, height, prom))
    kept = _suppress(candidates, params.min_distance(n))
    return BoundarySet(boundaries=tuple(kept), signal_length=n)


def detect_boundaries_baseline(scores, strategy: str,
                               params: PeakParams = PeakParams()) -> BoundarySet:
    """Non-wavelet boundary detectors used as ablation references.

    ``raw_local_minima`` reports strict local minima of the raw score
    signal, thinned by the same minimum-distance suppression (ranked by
    prominence of the inverted signal). ``raw_gradient`` runs the full
    adaptive peak detector on ``|s[t+1] - s[t]|``; a reported index ``t``
    marks the step between frames ``t`` and ``t+1``.
    """
    s = np.asarray(scores, dtype=np.float64)
    if s.ndim != 1 or len(s) < 1:
        raise ValueError("signal must be a non-empty 1-D sequence")
    n = len(s)
    if n < 3:
        return BoundarySet(boundaries=(), signal_length=n)
    if strategy == "raw_local_minima":
        c = (-s).tolist()
        candidates = [(t, c[t], _prominence_at(c, t)) for t in _candidate_peaks(c)]
        kept = _suppress(candidates, params.min_distance(n))
        return BoundarySet(boundaries=tuple(kept), signal_length=n)
    if strategy == "raw_gradient":
        diff = np.abs(np.diff(s))
        inner = detect_boundaries(diff, params)
        return BoundarySet(boundaries=inner.boundaries, signal_length=n)
    raise ValueError(f"unknown baseline strategy: {strategy!r}")


def segment_timeline(boundary_set: BoundarySet) -> tuple[Segment, ...]:
    """Partition [0, N-1] with each boundary as the last index of its segment."""
    n = boundary_set.signal_length
    if n < 1:
        raise ValueError("signal_length must be >= 1")
    starts = [0] + [b + 1 for b in boundary_set.boundaries]
    ends = list(boundary_set.boundaries) + [n - 1]
    return tuple(Segment(start=s, end=e, id=i)
                 for i, (s, e) in enumerate(zip(starts, ends)))
