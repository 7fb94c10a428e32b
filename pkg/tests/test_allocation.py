import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from wfs import (BudgetAllocation, EmptySegmentation, ImportanceWeights,
                 RelevanceTrace, Segment, SegmentScore, allocate_average,
                 allocate_budget, filter_segments, filter_threshold,
                 score_segments, segment_timeline, BoundarySet)

from reference import allocate_oracle, importance_oracle


def make_trace(scores):
    return RelevanceTrace(scores=tuple(scores),
                          frame_indices=tuple(range(len(scores))))


def make_scores(importances, lengths):
    """SegmentScore stubs with the importances and lengths under test."""
    out = []
    start = 0
    for i, (imp, ln) in enumerate(zip(importances, lengths)):
        seg = Segment(start=start, end=start + ln - 1, id=i)
        out.append(SegmentScore(seg, imp, 0, 0, 0, 0))
        start += ln
    return tuple(out)


# ----------------------------------------------------------------- scoring

def test_constant_trace_single_segment_importance():
    trace = make_trace([0.7] * 10)
    segs = segment_timeline(BoundarySet((), 10))
    (score,) = score_segments(trace, segs, ImportanceWeights())
    # constant trace normalizes to 0.5 everywhere; no variance information
    assert score.duration_term == 1.0
    assert score.mean_term == 0.5
    assert score.max_term == 0.5
    assert score.variance_term == 0.0
    assert abs(score.importance - 0.65) < 1e-12


def test_identical_segments_score_identically():
    trace = make_trace([0.1, 0.9, 0.4, 0.1, 0.9, 0.4])
    segs = segment_timeline(BoundarySet((2,), 6))
    a, b = score_segments(trace, segs, ImportanceWeights())
    assert a.importance == b.importance


def test_scores_match_direct_formula_oracle():
    rng = np.random.default_rng(5)
    trace = make_trace(rng.uniform(-3, 7, size=30))
    segs = segment_timeline(BoundarySet((9, 17), 30))
    weights = ImportanceWeights()
    got = score_segments(trace, segs, weights)
    s = np.asarray(trace.scores)
    s_norm = ((s - s.min()) / (s.max() - s.min())).tolist()
    for sc in got:
        want = importance_oracle(s_norm, sc.segment.start, sc.segment.end, 30,
                                 (0.4, 0.2, 0.3, 0.1))
        assert abs(sc.importance - want) < 1e-12


def test_importance_breakdown_recomposes():
    rng = np.random.default_rng(8)
    trace = make_trace(rng.uniform(0, 1, size=25))
    segs = segment_timeline(BoundarySet((11,), 25))
    w = ImportanceWeights()
    for sc in score_segments(trace, segs, w):
        recomposed = (w.w_d * sc.duration_term + w.w_a * sc.mean_term
                      + w.w_m * sc.max_term + w.w_v * sc.variance_term)
        assert abs(sc.importance - recomposed) < 1e-15


def test_score_segments_rejects_bad_input():
    trace = make_trace([1.0, 2.0, 3.0])
    with pytest.raises(EmptySegmentation):
        score_segments(trace, [], ImportanceWeights())
    with pytest.raises(ValueError):
        score_segments(trace, [Segment(0, 1, 0)], ImportanceWeights())
    with pytest.raises(ValueError):
        ImportanceWeights(w_d=-0.1)


# --------------------------------------------------------------- filtering

def test_filter_keeps_both_of_two_spread_segments():
    scores = make_scores([0.9, 0.1], [5, 5])
    assert abs(filter_threshold(scores, 1.2) - 0.02) < 1e-12
    assert len(filter_segments(scores, 1.2)) == 2


def test_filter_single_segment_always_kept():
    scores = make_scores([0.3], [4])
    assert len(filter_segments(scores, 1.2)) == 1


def test_filter_equal_importances_all_kept():
    scores = make_scores([0.5, 0.5, 0.5], [3, 3, 3])
    assert len(filter_segments(scores, 1.2)) == 3


def test_filter_drops_low_outlier():
    scores = make_scores([1.0, 1.0, 0.0], [3, 3, 3])
    kept = filter_segments(scores, 1.2)
    assert [sc.segment.id for sc in kept] == [0, 1]


@given(st.lists(st.floats(0, 2, allow_nan=False), min_size=1, max_size=12),
       st.floats(0, 3, allow_nan=False))
def test_filtering_never_empties(imps, eta):
    scores = make_scores(imps, [3] * len(imps))
    assert len(filter_segments(scores, eta)) >= 1


# -------------------------------------------------------------- allocation

def test_equal_importance_symmetry_case():
    scores = make_scores([0.5, 0.5, 0.5], [5, 5, 5])
    alloc = allocate_budget(scores, 8)
    assert [k for _, k in alloc.entries] == [3, 3, 2]


def test_zero_budget():
    scores = make_scores([0.9, 0.2], [4, 4])
    assert [k for _, k in allocate_budget(scores, 0).entries] == [0, 0]


def test_softmax_hand_computed_shares():
    scores = make_scores([math.log(3), 0.0], [6, 6])
    alloc = allocate_budget(scores, 8)
    assert [k for _, k in alloc.entries] == [6, 2]


def test_budget_capped_by_segment_length_with_regrant():
    scores = make_scores([5.0, 0.0], [2, 10])
    alloc = allocate_budget(scores, 8)
    assert [k for _, k in alloc.entries] == [2, 6]


def test_total_capacity_smaller_than_budget():
    scores = make_scores([1.0, 0.5], [2, 3])
    alloc = allocate_budget(scores, 64)
    assert [k for _, k in alloc.entries] == [2, 3]


def test_allocate_rejects_bad_input():
    with pytest.raises(EmptySegmentation):
        allocate_budget((), 4)
    with pytest.raises(ValueError):
        allocate_budget(make_scores([1.0], [3]), -1)


@given(st.data())
@settings(max_examples=200)
def test_allocation_exactness_and_caps(data):
    m = data.draw(st.integers(1, 6))
    imps = data.draw(st.lists(st.floats(-3, 3, allow_nan=False),
                              min_size=m, max_size=m))
    lens = data.draw(st.lists(st.integers(1, 12), min_size=m, max_size=m))
    k = data.draw(st.integers(0, 64))
    alloc = allocate_budget(make_scores(imps, lens), k)
    budgets = [b for _, b in alloc.entries]
    assert sum(budgets) == min(k, sum(lens))
    assert all(0 <= b <= ln for b, ln in zip(budgets, lens))


@given(st.data())
@settings(max_examples=200)
def test_allocation_matches_literal_oracle(data):
    m = data.draw(st.integers(1, 5))
    imps = data.draw(st.lists(st.floats(-2, 2, allow_nan=False),
                              min_size=m, max_size=m))
    lens = data.draw(st.lists(st.integers(1, 8), min_size=m, max_size=m))
    k = data.draw(st.integers(0, 10))
    alloc = allocate_budget(make_scores(imps, lens), k)
    assert [b for _, b in alloc.entries] == allocate_oracle(imps, lens, k)


@given(st.data())
def test_argmax_segment_never_outbudgeted(data):
    m = data.draw(st.integers(2, 6))
    imps = data.draw(st.lists(st.floats(-2, 2, allow_nan=False), min_size=m,
                              max_size=m, unique=True))
    k = data.draw(st.integers(0, 24))
    # lengths >= k so caps cannot bind and mask the ordering
    alloc = allocate_budget(make_scores(imps, [24] * m), k)
    budgets = dict(alloc.entries)
    top = max(range(m), key=lambda i: imps[i])
    assert all(budgets[top] >= b for b in budgets.values())


@given(st.data())
def test_softmax_shift_invariance(data):
    m = data.draw(st.integers(1, 6))
    # grid importances and power-of-two shifts keep the shifted softmax
    # inputs bit-identical after max subtraction
    imps = [v / 1024.0 for v in data.draw(
        st.lists(st.integers(-4096, 4096), min_size=m, max_size=m))]
    shift = data.draw(st.sampled_from([-2.0, -0.5, 1.0, 4.0]))
    lens = data.draw(st.lists(st.integers(1, 10), min_size=m, max_size=m))
    k = data.draw(st.integers(0, 32))
    base = allocate_budget(make_scores(imps, lens), k)
    shifted = allocate_budget(make_scores([v + shift for v in imps], lens), k)
    assert base.entries == shifted.entries


@given(st.integers(1, 5), st.integers(0, 40))
def test_equal_importance_budgets_monotone_in_k(m, k):
    lens = [40] * m
    a1 = dict(allocate_budget(make_scores([1.0] * m, lens), k).entries)
    a2 = dict(allocate_budget(make_scores([1.0] * m, lens), k + 1).entries)
    assert all(a2[i] >= a1[i] for i in a1)


# ---------------------------------------------------------- average split

def test_average_split_even_with_remainder_to_low_ids():
    scores = make_scores([9.0, 1.0, 1.0], [5, 5, 5])
    alloc = allocate_average(scores, 8)
    assert [k for _, k in alloc.entries] == [3, 3, 2]


def test_average_split_respects_caps():
    scores = make_scores([1.0, 1.0], [2, 9])
    alloc = allocate_average(scores, 9)
    assert [k for _, k in alloc.entries] == [2, 7]


def test_budget_allocation_lookup():
    alloc = BudgetAllocation(entries=((0, 3), (2, 1)), total=4)
    assert alloc.budget_of(2) == 1
    with pytest.raises(KeyError):
        alloc.budget_of(1)
