"""Per-segment frame selection: relevance anchor plus greedy MMR iterations."""
from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np

from .allocation import BudgetAllocation
from .boundary import Segment
from .errors import AlignmentError, BudgetExceedsSegment, ZeroVector
from .trace import RelevanceTrace, normalized_scores

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class EmbeddingMatrix:
    """Row-per-frame visual embeddings used for the diversity term."""

    vectors: np.ndarray

    def __post_init__(self):
        arr = np.asarray(self.vectors, dtype=np.float64)
        if arr.ndim != 2 or arr.shape[0] < 1 or arr.shape[1] < 1:
            raise ValueError("embeddings must be a non-empty N x D matrix")
        object.__setattr__(self, "vectors", arr)

    @property
    def dim(self) -> int:
        return self.vectors.shape[1]

    def __len__(self) -> int:
        return self.vectors.shape[0]


@dataclass(frozen=True)
class SelectionResult:
    """Final keyframe indices plus per-segment provenance.

    ``per_segment`` holds ``(segment_id, chosen indices, anchor index)``;
    the anchor is the segment's relevance argmax (None for zero-budget
    segments). ``strategy`` records what actually ran, including the topk
    fallback when MMR was requested without embeddings.
    """

    selected: tuple[int, ...]
    per_segment: tuple[tuple[int, tuple[int, ...], int | None], ...]
    strategy: str


def cosine_similarity(u, v) -> float:
    """Cosine of the angle between two nonzero vectors, clipped to [-1, 1]."""
    a = np.asarray(u, dtype=np.float64)
    b = np.asarray(v, dtype=np.float64)
    na = np.linalg.norm(a)
    nb = np.linalg.norm(b)
    if na == 0.0 or nb == 0.0:
        raise ZeroVector("cosine similarity is undefined for zero vectors")
    return float(np.clip(a @ b / (na * nb), -1.0, 1.0))


def _anchor_index(scores_norm: np.ndarray, segment: Segment) -> int:
    chunk = scores_norm[segment.start:segment.end + 1]
    return segment.start + int(np.argmax(chunk))   # first max: lowest index


def _unit_rows(vectors: np.ndarray) -> np.ndarray:
    norms = np.linalg.norm(vectors, axis=1)
    if np.any(norms == 0.0):
        raise ZeroVector("embedding matrix contains an all-zero row")
    return vectors / norms[:, None]


def select_in_segment(trace: RelevanceTrace, segment: Segment, budget: int,
                      embeddings: EmbeddingMatrix, lam: float) -> tuple[int, ...]:
    """Greedy MMR selection of ``budget`` frames inside one segment.

    Starts from the anchor (relevance argmax, lowest index on ties), then
    repeatedly takes the frame maximizing
    ``lam * score - (1 - lam) * max_similarity_to_selected``. Scores are the
    min-max normalized trace scores, so ``lam`` trades off quantities on
    comparable scales.
    """
    if not 0.0 <= lam <= 1.0:
        raise ValueError("lambda must be in [0, 1]")
    seg_len = len(segment)
    if budget < 1:
        raise ValueError("budget must be >= 1")
    if budget > seg_len:
        raise BudgetExceedsSegment(
            f"budget {budget} exceeds segment length {seg_len}")
    if len(embeddings) != len(trace):
        raise AlignmentError(
            f"embeddings have {len(embeddings)} rows for a trace of length {len(trace)}")
    s = normalized_scores(trace)
    unit = _unit_rows(embeddings.vectors[segment.start:segment.end + 1])
    rel = s[segment.start:segment.end + 1]

    anchor = int(np.argmax(rel))
    chosen = [anchor]
    max_sim = unit @ unit[anchor]
    for _ in range(budget - 1):
        objective = lam * rel - (1.0 - lam) * max_sim
        objective[chosen] = -np.inf
        pick = int(np.argmax(objective))
        chosen.append(pick)
        max_sim = np.maximum(max_sim, unit @ unit[pick])
    return tuple(sorted(segment.start + t for t in chosen))


def select_in_segment_baseline(trace: RelevanceTrace, segment: Segment,
                               budget: int, strategy: str) -> tuple[int, ...]:
    """Ablation selectors: ``topk`` by score or ``uniform`` spacing."""
    seg_len = len(segment)
    if budget < 1:
        raise ValueError("budget must be >= 1")
    if budget > seg_len:
        raise BudgetExceedsSegment(
            f"budget {budget} exceeds segment length {seg_len}")
    if strategy == "topk":
        s = normalized_scores(trace)[segment.start:segment.end + 1]
        order = np.argsort(-s, kind="stable")   # score desc, index asc on ties
        picks = sorted(int(i) for i in order[:budget])
        return tuple(segment.start + i for i in picks)
    if strategy == "uniform":
        if budget == 1:
            rel = [0]
        else:
            rel = [round(j * (seg_len - 1) / (budget - 1)) for j in range(budget)]
        seen: list[int] = []
        for p in rel:
            if p not in seen:
                seen.append(p)
        backfill = (p for p in range(seg_len) if p not in seen)
        while len(seen) < budget:
            seen.append(next(backfill))
        return tuple(sorted(segment.start + p for p in seen))
    raise ValueError(f"unknown baseline strategy: {strategy!r}")


def select_frames(trace: RelevanceTrace, segments, allocation: BudgetAllocation,
                  embeddings: EmbeddingMatrix | None = None, lam: float = 0.5,
                  strategy: str = "mmr") -> SelectionResult:
    """Run per-segment selection for every budgeted segment and merge.

    Zero-budget segments are skipped (reported with empty index lists).
    When ``strategy`` is ``mmr`` but no embeddings are supplied, selection
    falls back to ``topk`` and the result records the fallback.
    """
    if strategy not in ("mmr", "topk", "uniform"):
        raise ValueError(f"unknown selection strategy: {strategy!r}")
    segments = {seg.id: seg for seg in segments}
    effective = strategy
    if strategy == "mmr" and embeddings is None:
        logger.warning("no embeddings provided; falling back to topk selection")
        effective = "topk"
    if embeddings is not None and len(embeddings) != len(trace):
        raise AlignmentError(
            f"embeddings have {len(embeddings)} rows for a trace of length {len(trace)}")
    s = normalized_scores(trace)
    per_segment = []
    selected: list[int] = []
    for sid, budget in allocation.entries:
        seg = segments[sid]
        if budget == 0:
            per_segment.append((sid, (), None))
            continue
        anchor = _anchor_index(s, seg)
        if effective == "mmr":
            picks = select_in_segment(trace, seg, budget, embeddings, lam)
        else:
            picks = select_in_segment_baseline(trace, seg, budget, effective)
        per_segment.append((sid, picks, anchor))
        selected.extend(picks)
    return SelectionResult(selected=tuple(sorted(selected)),
                           per_segment=tuple(per_segment),
                           strategy=effective)
