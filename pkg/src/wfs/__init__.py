"""Wavelet-based keyframe selection for relevance-scored video traces.

Given a per-frame query-relevance trace and a frame budget, the pipeline
detects semantic boundaries from the coarsest wavelet detail band,
partitions the timeline into segments, distributes the budget by segment
importance, and picks a diverse, relevant frame subset per segment.
"""

from .allocation import (BudgetAllocation, ImportanceWeights, SegmentScore,
                         allocate_average, allocate_budget, filter_segments,
                         filter_threshold, score_segments)
from .boundary import (BoundarySet, PeakParams, Segment, change_intensity,
                       detect_boundaries, detect_boundaries_baseline,
                       peak_prominence, segment_timeline)
from .errors import (AlignmentError, BudgetExceedsSegment, EmptySegmentation,
                     InconsistentCoefficients, InfeasibleConfig, LevelTooDeep,
                     MagicMismatch, NotAPeak, ParseError, TruncatedFile,
                     ValidationError, WfsError, ZeroVector)
from .io_formats import (read_embeddings, read_trace, render_document,
                         report_document, write_embeddings, write_trace)
from .mmr import (EmbeddingMatrix, SelectionResult, cosine_similarity,
                  select_frames, select_in_segment, select_in_segment_baseline)
from .pipeline import PipelineConfig, PipelineReport, run
from .synth import (BoundaryEvalResult, SynthConfig, eval_boundaries, generate,
                    recall_window)
from .trace import RelevanceTrace, normalized_scores
from .wavelet import (FAMILY_NAMES, WaveletCoefficients, WaveletFamily,
                      adaptive_level, decompose, feasible_max_level,
                      get_family, reconstruct, reconstruct_detail_only)

__version__ = "0.1.0"
