"""End-to-end staged pipeline: trace -> boundaries -> segments -> budgets -> frames."""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .allocation import (BudgetAllocation, ImportanceWeights, SegmentScore,
                         allocate_average, allocate_budget, filter_segments,
                         filter_threshold, score_segments)
from .boundary import (BoundarySet, PeakParams, change_intensity,
                       detect_boundaries, detect_boundaries_baseline,
                       segment_timeline)
from .errors import AlignmentError
from .mmr import EmbeddingMatrix, SelectionResult, select_frames
from .trace import RelevanceTrace
from .wavelet import adaptive_level, decompose, reconstruct_detail_only

BOUNDARY_STRATEGIES = ("wavelet", "raw_local_minima", "raw_gradient")
SELECTION_STRATEGIES = ("mmr", "topk", "uniform")
ALLOCATION_STRATEGIES = ("adaptive", "average")


@dataclass(frozen=True)
class PipelineConfig:
    """Full configuration of one pipeline run; defaults reproduce the
    reference setting (db4, drift 3, alpha 0.5, beta 0.05, weights
    0.4/0.2/0.3/0.1, eta 1.2, lambda 0.5, wavelet/adaptive/mmr)."""

    k_total: int
    wavelet_family: str = "db4"
    drift: int = 3
    peak: PeakParams = field(default_factory=PeakParams)
    weights: ImportanceWeights = field(default_factory=ImportanceWeights)
    eta: float = 1.2
    lam: float = 0.5
    boundary_strategy: str = "wavelet"
    selection_strategy: str = "mmr"
    allocation_strategy: str = "adaptive"

    def __post_init__(self):
        if self.k_total < 0:
            raise ValueError("k_total must be >= 0")
        if self.drift < 0:
            raise ValueError("drift must be >= 0")
        if not 0.0 <= self.lam <= 1.0:
            raise ValueError("lambda must be in [0, 1]")
        if self.boundary_strategy not in BOUNDARY_STRATEGIES:
            raise ValueError(f"unknown boundary strategy: {self.boundary_strategy!r}")
        if self.selection_strategy not in SELECTION_STRATEGIES:
            raise ValueError(f"unknown selection strategy: {self.selection_strategy!r}")
        if self.allocation_strategy not in ALLOCATION_STRATEGIES:
            raise ValueError(f"unknown allocation strategy: {self.allocation_strategy!r}")


@dataclass(frozen=True)
class PipelineReport:
    """Everything needed to replay one run's decisions deterministically."""

    video_id: str
    trace_length: int
    config: PipelineConfig
    level_used: int | None
    boundaries: BoundarySet
    segment_scores: tuple[SegmentScore, ...]
    filter_tau: float
    surviving_ids: tuple[int, ...]
    allocation: BudgetAllocation
    selection: SelectionResult
    notes: tuple[str, ...] = ()
    detail_signal: tuple[float, ...] | None = None
    intensity_signal: tuple[float, ...] | None = None

    @property
    def selected(self) -> tuple[int, ...]:
        return self.selection.selected


def _wavelet_boundaries(scores: np.ndarray, config: PipelineConfig
                        ) -> tuple[BoundarySet, int, np.ndarray, np.ndarray]:
    level = adaptive_level(len(scores), config.drift, config.wavelet_family)
    coeffs = decompose(scores, config.wavelet_family, level)
    detail = reconstruct_detail_only(coeffs)
    intensity = change_intensity(detail)
    return detect_boundaries(intensity, config.peak), level, detail, intensity


def run(trace: RelevanceTrace, embeddings: EmbeddingMatrix | None,
        config: PipelineConfig, export_signals: bool = False) -> PipelineReport:
    """Execute the staged pipeline on one trace.

    The run is deterministic and pure: identical inputs and configuration
    produce identical reports. Degenerate paths (short traces, budgets at or
    above the trace length, surviving segments too small to absorb the
    budget) are resolved as documented in ``notes``.
    """
    if embeddings is not None and len(embeddings) != len(trace):
        raise AlignmentError(
            f"embeddings have {len(embeddings)} rows for a trace of length {len(trace)}")
    n = len(trace)
    k = config.k_total
    notes: list[str] = []
    scores = np.asarray(trace.scores, dtype=np.float64)

    level_used: int | None = None
    detail = intensity = None
    if n < 3:
        boundaries = BoundarySet(boundaries=(), signal_length=n)
        notes.append("trace shorter than 3 frames: boundary detection skipped")
    elif config.boundary_strategy == "wavelet":
        boundaries, level_used, detail, intensity = _wavelet_boundaries(scores, config)
    else:
        boundaries = detect_boundaries_baseline(
            scores, config.boundary_strategy, config.peak)

    segments = segment_timeline(boundaries)
    segment_scores = score_segments(trace, segments, config.weights)
    tau = filter_threshold(segment_scores, config.eta)
    surviving = filter_segments(segment_scores, config.eta)

    effective_k = min(k, n)
    if k >= n:
        surviving = segment_scores
        notes.append(f"budget {k} covers the whole trace of {n} frames")
    elif sum(len(sc.segment) for sc in surviving) < effective_k:
        surviving = segment_scores
        notes.append("surviving segments cannot absorb the budget: "
                     "importance filtering skipped")

    if config.allocation_strategy == "adaptive":
        allocation = allocate_budget(surviving, effective_k)
    else:
        allocation = allocate_average(surviving, effective_k)

    selection = select_frames(trace, [sc.segment for sc in surviving],
                              allocation, embeddings, config.lam,
                              config.selection_strategy)
    return PipelineReport(
        video_id=trace.video_id,
        trace_length=n,
        config=config,
        level_used=level_used,
        boundaries=boundaries,
        segment_scores=segment_scores,
        filter_tau=tau,
        surviving_ids=tuple(sc.segment.id for sc in surviving),
        allocation=allocation,
        selection=selection,
        notes=tuple(notes),
        detail_signal=tuple(detail) if export_signals and detail is not None else None,
        intensity_signal=(tuple(intensity)
                          if export_signals and intensity is not None else None),
    )
