import pytest
from hypothesis import given, settings, strategies as st

from wfs import (BoundarySet, InfeasibleConfig, SynthConfig, eval_boundaries,
                 generate, recall_window)
from wfs.synth import min_segment_length


# ---------------------------------------------------------------- generate

def test_single_segment_no_noise_is_constant():
    trace, truth = generate(SynthConfig(n=30, num_segments=1, noise_sigma=0.0,
                                        seed=4))
    assert truth == ()
    assert len(set(trace.scores)) == 1


def test_same_seed_reproduces_trace():
    cfg = SynthConfig(n=50, num_segments=3, noise_sigma=0.2, seed=77)
    t1, b1 = generate(cfg)
    t2, b2 = generate(cfg)
    assert t1.scores == t2.scores
    assert b1 == b2


def test_different_seeds_differ():
    t1, _ = generate(SynthConfig(n=50, num_segments=3, seed=1, noise_sigma=0.0))
    t2, _ = generate(SynthConfig(n=50, num_segments=3, seed=2, noise_sigma=0.0))
    assert t1.scores != t2.scores


def test_infeasible_when_segments_cannot_fit():
    with pytest.raises(InfeasibleConfig):
        generate(SynthConfig(n=10, num_segments=11))


def test_infeasible_when_min_step_exceeds_half_range():
    with pytest.raises(InfeasibleConfig):
        generate(SynthConfig(n=40, num_segments=2, level_range=(0.0, 1.0),
                             min_step=0.6))


def test_config_validation():
    with pytest.raises(ValueError):
        SynthConfig(n=10, num_segments=2, min_step=-0.5)
    with pytest.raises(ValueError):
        SynthConfig(n=10, num_segments=2, noise_sigma=-1.0)
    with pytest.raises(ValueError):
        SynthConfig(n=10, num_segments=2, level_range=(1.0, 0.0))


@given(st.integers(8, 200), st.integers(1, 5), st.integers(0, 2 ** 63 - 1))
@settings(max_examples=120)
def test_generated_structure(n, k, seed):
    cfg = SynthConfig(n=n, num_segments=k, noise_sigma=0.0, seed=seed,
                      min_step=0.5, level_range=(0.0, 1.0))
    if k > n:
        with pytest.raises(InfeasibleConfig):
            generate(cfg)
        return
    trace, truth = generate(cfg)
    assert len(trace) == n
    assert len(truth) == k - 1
    edges = [-1, *truth, n - 1]
    m = min_segment_length(cfg)
    levels = []
    for a, b in zip(edges, edges[1:]):
        assert b - a >= m
        chunk = set(trace.scores[a + 1:b + 1])
        assert len(chunk) == 1          # piecewise constant, noise-free
        levels.append(next(iter(chunk)))
    for l1, l2 in zip(levels, levels[1:]):
        assert abs(l2 - l1) >= 0.5 - 1e-12
        assert 0.0 <= l1 <= 1.0


# ------------------------------------------------------------------ metrics

def test_perfect_detection_scores_one():
    got = eval_boundaries(BoundarySet((5, 11), 40), (5, 11), window=0)
    assert (got.precision, got.recall, got.f1) == (1.0, 1.0, 1.0)


def test_empty_sets_score_one_by_convention():
    got = eval_boundaries((), (), window=3)
    assert got.f1 == 1.0


def test_window_arithmetic():
    hit = eval_boundaries((5,), (7,), window=2)
    assert (hit.precision, hit.recall, hit.f1) == (1.0, 1.0, 1.0)
    miss = eval_boundaries((5,), (7,), window=1)
    assert (miss.precision, miss.recall, miss.f1) == (0.0, 0.0, 0.0)


def test_one_sided_empties():
    assert eval_boundaries((), (4,), window=2).recall == 0.0
    assert eval_boundaries((4,), (), window=2).precision == 0.0


def test_each_detection_matches_at_most_one_truth():
    got = eval_boundaries((10,), (9, 11), window=3)
    assert got.matches == 1
    assert got.precision == 1.0
    assert got.recall == 0.5


@given(st.lists(st.integers(1, 60), max_size=8, unique=True),
       st.lists(st.integers(1, 60), max_size=8, unique=True),
       st.integers(0, 10))
def test_swapping_roles_swaps_precision_and_recall(det, tru, w):
    a = eval_boundaries(sorted(det), sorted(tru), w)
    b = eval_boundaries(sorted(tru), sorted(det), w)
    assert a.precision == b.recall
    assert a.recall == b.precision
    assert a.matches == b.matches


def test_window_validation():
    with pytest.raises(ValueError):
        eval_boundaries((1,), (1,), window=-1)


def test_recall_window_formula():
    assert recall_window(64) == 5
    assert recall_window(96) == 5
    assert recall_window(1000) == 20
