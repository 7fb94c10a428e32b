"""Segment importance scoring, filtering, and frame-budget distribution."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .boundary import Segment
from .errors import EmptySegmentation
from .trace import RelevanceTrace, normalized_scores


@dataclass(frozen=True)
class ImportanceWeights:
    """Mixing weights for the composite segment importance score."""

    w_d: float = 0.4   # duration share
    w_a: float = 0.2   # mean relevance
    w_m: float = 0.3   # peak relevance
    w_v: float = 0.1   # variance ratio

    def __post_init__(self):
        if min(self.w_d, self.w_a, self.w_m, self.w_v) < 0:
            raise ValueError("importance weights must be >= 0")


@dataclass(frozen=True)
class SegmentScore:
    """A segment together with its importance and per-term breakdown."""

    segment: Segment
    importance: float
    duration_term: float
    mean_term: float
    max_term: float
    variance_term: float


@dataclass(frozen=True)
class BudgetAllocation:
    """Integer frame budgets per segment id; sums to min(K, capacity)."""

    entries: tuple[tuple[int, int], ...]
    total: int

    def budget_of(self, segment_id: int) -> int:
        for sid, k in self.entries:
            if sid == segment_id:
                return k
        raise KeyError(segment_id)


def score_segments(trace: RelevanceTrace, segments, weights: ImportanceWeights
                   ) -> tuple[SegmentScore, ...]:
    """Composite importance per segment.

    Terms are computed on the min-max normalized trace: duration share
    ``|G|/N``, mean and max normalized score, and the ratio of segment to
    global population variance (0 when the global variance is 0).
    """
    segments = tuple(segments)
    if not segments:
        raise EmptySegmentation("segment scoring needs at least one segment")
    n = len(trace)
    covered = sorted((seg.start, seg.end) for seg in segments)
    if covered[0][0] != 0 or covered[-1][1] != n - 1 or any(
            b[0] != a[1] + 1 for a, b in zip(covered, covered[1:])):
        raise ValueError("segments must partition the trace")
    s = normalized_scores(trace)
    global_var = float(s.var())
    out = []
    for seg in segments:
        chunk = s[seg.start:seg.end + 1]
        duration = len(seg) / n
        mean = float(chunk.mean())
        peak = float(chunk.max())
        var_ratio = float(chunk.var()) / global_var if global_var > 0 else 0.0
        importance = (weights.w_d * duration + weights.w_a * mean
                      + weights.w_m * peak + weights.w_v * var_ratio)
        out.append(SegmentScore(seg, importance, duration, mean, peak, var_ratio))
    return tuple(out)


def filter_threshold(scores, eta: float) -> float:
    """Importance cutoff ``mean - eta * std`` (population std)."""
    imp = np.asarray([sc.importance for sc in scores], dtype=np.float64)
    if imp.size == 0:
        raise EmptySegmentation("cannot compute a threshold over no segments")
    return float(imp.mean() - eta * imp.std())


def filter_segments(scores, eta: float) -> tuple[SegmentScore, ...]:
    """Drop segments with importance below the adaptive cutoff.

    Comparison is ``>=``, and the top-importance segment is always retained,
    so the result is never empty.
    """
    scores = tuple(scores)
    tau = filter_threshold(scores, eta)
    kept = tuple(sc for sc in scores if sc.importance >= tau)
    if not kept:   # unreachable for eta >= 0; guards degenerate float inputs
        best = max(scores, key=lambda sc: (sc.importance, -sc.segment.id))
        kept = (best,)
    return kept


def _softmax(values: np.ndarray) -> np.ndarray:
    e = np.exp(values - values.max())
    return e / e.sum()


def _grant_order(fracs, importances):
    # fractional part desc, then importance desc, then segment position asc
    return sorted(range(len(fracs)),
                  key=lambda i: (-fracs[i], -importances[i], i))


def allocate_budget(scores, k_total: int) -> BudgetAllocation:
    """Distribute ``k_total`` frames across segments by softmax importance.

    Ideal shares are floored; leftover frames go one at a time in
    descending fractional-part order (ties: importance desc, then segment
    id asc). Budgets are capped at segment length, with capped overflow
    re-granted in the same cyclic order, so the total is exactly
    ``min(k_total, total segment capacity)``.
    """
    scores = tuple(scores)
    if not scores:
        raise EmptySegmentation("cannot allocate over no segments")
    if k_total < 0:
        raise ValueError("k_total must be >= 0")
    imp = np.asarray([sc.importance for sc in scores], dtype=np.float64)
    lengths = [len(sc.segment) for sc in scores]
    ideal = k_total * _softmax(imp)
    base = np.floor(ideal).astype(int)
    fracs = (ideal - base).tolist()
    order = _grant_order(fracs, imp.tolist())
    budgets = [int(b) for b in base]
    for i in order[:k_total - sum(budgets)]:
        budgets[i] += 1
    overflow = 0
    for i, ln in enumerate(lengths):
        if budgets[i] > ln:
            overflow += budgets[i] - ln
            budgets[i] = ln
    while overflow > 0:
        open_slots = [i for i in order if budgets[i] < lengths[i]]
        if not open_slots:
            break
        for i in open_slots:
            if overflow == 0:
                break
            budgets[i] += 1
            overflow -= 1
    entries = tuple((sc.segment.id, budgets[i]) for i, sc in enumerate(scores))
    return BudgetAllocation(entries=entries, total=k_total)


def allocate_average(scores, k_total: int) -> BudgetAllocation:
    """Importance-blind split: as even as possible, remainder to lowest ids.

    Budgets are capped at segment length with overflow re-granted cyclically
    in id order, mirroring the exactness guarantee of
    :func:`allocate_budget`.
    """
    scores = tuple(scores)
    if not scores:
        raise EmptySegmentation("cannot allocate over no segments")
    if k_total < 0:
        raise ValueError("k_total must be >= 0")
    m = len(scores)
    lengths = [len(sc.segment) for sc in scores]
    order = sorted(range(m), key=lambda i: scores[i].segment.id)
    budgets = [min(k_total // m, ln) for ln in lengths]
    pool = k_total - sum(budgets)
    while pool > 0:
        open_slots = [i for i in order if budgets[i] < lengths[i]]
        if not open_slots:
            break
        for i in open_slots:
            if pool == 0:
                break
            budgets[i] += 1
            pool -= 1
    entries = tuple((sc.segment.id, budgets[i]) for i, sc in enumerate(scores))
    return BudgetAllocation(entries=entries, total=k_total)
