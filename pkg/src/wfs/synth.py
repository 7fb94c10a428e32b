"""Synthetic piecewise-constant traces with known boundaries, plus metrics.

The generator is the desk-scale stand-in for benchmark videos: segment
levels model stable query relevance, level steps model semantic shifts, and
additive Gaussian noise models scorer jitter. Randomness comes from numpy's
PCG64 generator seeded with an explicit 64-bit integer, so runs are
reproducible across platforms.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .boundary import BoundarySet
from .errors import InfeasibleConfig
from .trace import RelevanceTrace


@dataclass(frozen=True)
class SynthConfig:
    """Parameters of one synthetic trace.

    ``min_step`` is the smallest allowed level difference at a true
    boundary; segments are at least ``ceil(n / (4 * num_segments))`` frames
    long with the remaining length split uniformly at random.
    """

    n: int
    num_segments: int
    level_range: tuple[float, float] = (0.0, 1.0)
    min_step: float = 0.5
    noise_sigma: float = 0.0
    seed: int = 0

    def __post_init__(self):
        if self.min_step < 0:
            raise ValueError("min_step must be >= 0")
        if self.noise_sigma < 0:
            raise ValueError("noise_sigma must be >= 0")
        if self.level_range[1] < self.level_range[0]:
            raise ValueError("level_range must be (low, high) with low <= high")
        if not 0 <= self.seed < 2 ** 64:
            raise ValueError("seed must be an unsigned 64-bit integer")


def min_segment_length(config: SynthConfig) -> int:
    return max(1, -(-config.n // (4 * config.num_segments)))


def generate(config: SynthConfig) -> tuple[RelevanceTrace, tuple[int, ...]]:
    """Build a noisy piecewise-constant trace and its true boundary indices.

    A true boundary is the last index of its segment, matching the
    segmentation convention used by the pipeline. Raises
    :class:`InfeasibleConfig` when the minimum segment lengths cannot fit in
    ``n``, or when ``min_step`` exceeds half the level range (a level chain
    with the required separations is then not guaranteed to exist for every
    draw of the first level).
    """
    n, k = config.n, config.num_segments
    if k < 1 or n < 1:
        raise InfeasibleConfig("need n >= 1 and num_segments >= 1")
    low, high = config.level_range
    span = high - low
    m = min_segment_length(config)
    if k * m > n:
        raise InfeasibleConfig(
            f"{k} segments of minimum length {m} do not fit in {n} frames")
    if k >= 2 and config.min_step > span / 2:
        raise InfeasibleConfig(
            f"min_step {config.min_step} exceeds half the level range {span}")
    rng = np.random.default_rng(np.uint64(config.seed))

    extra = n - k * m
    cuts = np.sort(rng.integers(0, extra + 1, size=k - 1))
    lengths = np.diff(np.concatenate(([0], cuts, [extra]))) + m

    levels = [float(rng.uniform(low, high))]
    for _ in range(k - 1):
        prev = levels[-1]
        intervals = []
        if prev - config.min_step >= low:
            intervals.append((low, prev - config.min_step))
        if prev + config.min_step <= high:
            intervals.append((prev + config.min_step, high))
        widths = np.array([b - a for a, b in intervals])
        if widths.sum() == 0.0:
            a, b = intervals[0]
            levels.append(a)
            continue
        pick = rng.choice(len(intervals), p=widths / widths.sum())
        a, b = intervals[pick]
        levels.append(float(rng.uniform(a, b)))

    signal = np.repeat(levels, lengths)
    if config.noise_sigma > 0:
        signal = signal + rng.normal(0.0, config.noise_sigma, size=n)
    truth = tuple(int(t) for t in np.cumsum(lengths)[:-1] - 1)
    trace = RelevanceTrace(scores=tuple(signal),
                           frame_indices=tuple(range(n)),
                           fps=1.0,
                           video_id=f"synth-{config.seed}")
    return trace, truth


@dataclass(frozen=True)
class BoundaryEvalResult:
    """Precision/recall/F1 of detected vs true boundaries at a tolerance."""

    precision: float
    recall: float
    f1: float
    tolerance_window: int
    matches: int


def eval_boundaries(detected, truth, window: int) -> BoundaryEvalResult:
    """Greedy nearest-distance matching within ``+-window`` frames.

    Each detected boundary matches at most one true boundary. Ratios with an
    empty denominator are 1 when the opposite set is empty too, else 0; F1
    is 0 when precision + recall is 0.
    """
    if window < 0:
        raise ValueError("window must be >= 0")
    det = tuple(detected.boundaries) if isinstance(detected, BoundarySet) \
        else tuple(int(d) for d in detected)
    tru = tuple(int(t) for t in truth)
    # symmetric tie order so swapping the roles swaps precision and recall
    pairs = sorted(((abs(d - t), min(d, t), max(d, t), d, t)
                    for d in det for t in tru if abs(d - t) <= window))
    used_d: set[int] = set()
    used_t: set[int] = set()
    matches = 0
    for _, _, _, d, t in pairs:
        if d in used_d or t in used_t:
            continue
        used_d.add(d)
        used_t.add(t)
        matches += 1
    precision = matches / len(det) if det else (1.0 if not tru else 0.0)
    recall = matches / len(tru) if tru else (1.0 if not det else 0.0)
    f1 = 0.0 if precision + recall == 0 else \
        2 * precision * recall / (precision + recall)
    return BoundaryEvalResult(precision=precision, recall=recall, f1=f1,
                              tolerance_window=window, matches=matches)


def recall_window(n: int) -> int:
    """Tolerance used by the synthetic boundary-recall checks."""
    return max(5, math.ceil(n / 50))
