"""On-disk formats: score-trace documents, embedding blobs, report rendering.

Trace files are JSON (version 1): produced by heterogeneous scorers and
meant to be read by humans. Embedding files are binary (magic ``WFSE``,
little-endian u32 N and D, then N*D little-endian float32 row-major) because
the payload dominates and round-trips must be bit-exact. Reports render
floats with 6 fixed decimals so identical runs produce identical bytes.
"""
from __future__ import annotations

import json
import math
import struct
from pathlib import Path

import numpy as np

from .errors import MagicMismatch, ParseError, TruncatedFile, ValidationError
from .mmr import EmbeddingMatrix
from .pipeline import PipelineReport
from .trace import RelevanceTrace

TRACE_VERSION = 1
EMBEDDING_MAGIC = b"WFSE"


def read_trace(path) -> RelevanceTrace:
    """Parse and validate a score-trace document."""
    text = Path(path).read_text(encoding="utf-8")
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(f"{path}: line {e.lineno}, column {e.colno}: {e.msg}") from e
    if not isinstance(doc, dict):
        raise ParseError(f"{path}: top-level value must be an object")
    version = doc.get("version")
    if version != TRACE_VERSION:
        raise ParseError(f"{path}: unsupported trace version: {version!r}")
    for name, kind in (("video_id", str), ("fps", (int, float)),
                       ("frame_indices", list), ("scores", list)):
        if name not in doc:
            raise ParseError(f"{path}: missing field {name!r}")
        if not isinstance(doc[name], kind):
            raise ParseError(f"{path}: field {name!r} has the wrong type")
    if "query" in doc and not isinstance(doc["query"], str):
        raise ParseError(f"{path}: field 'query' must be a string")
    fps = float(doc["fps"])
    if fps <= 0:
        raise ValidationError(f"{path}: fps must be > 0")
    idx = doc["frame_indices"]
    scores = doc["scores"]
    if len(idx) != len(scores):
        raise ValidationError(
            f"{path}: frame_indices has {len(idx)} entries, scores has {len(scores)}")
    if len(idx) < 1:
        raise ValidationError(f"{path}: trace must contain at least one frame")
    if not all(isinstance(i, int) and not isinstance(i, bool) for i in idx):
        raise ValidationError(f"{path}: frame_indices must be integers")
    if not all(isinstance(s, (int, float)) and not isinstance(s, bool)
               for s in scores):
        raise ValidationError(f"{path}: scores must be numbers")
    if not all(math.isfinite(s) for s in scores) or not math.isfinite(fps):
        raise ValidationError(f"{path}: scores and fps must be finite")
    if any(b <= a for a, b in zip(idx, idx[1:])):
        raise ValidationError(f"{path}: frame_indices must be strictly increasing")
    return RelevanceTrace(scores=tuple(float(s) for s in scores),
                          frame_indices=tuple(idx),
                          fps=fps,
                          video_id=doc["video_id"])


def write_trace(trace: RelevanceTrace, path, query: str | None = None,
                meta: dict | None = None) -> None:
    doc = {
        "version": TRACE_VERSION,
        "video_id": trace.video_id,
        "fps": trace.fps,
        "frame_indices": list(trace.frame_indices),
        "scores": list(trace.scores),
    }
    if query is not None:
        doc["query"] = query
    if meta is not None:
        doc["meta"] = meta
    Path(path).write_text(json.dumps(doc, indent=2) + "\n", encoding="utf-8")


def read_embeddings(path) -> EmbeddingMatrix:
    """Load an embedding blob, checking magic, declared shape, and size."""
    blob = Path(path).read_bytes()
    if len(blob) < 4 or blob[:4] != EMBEDDING_MAGIC:
        raise MagicMismatch(f"{path}: not an embedding file")
    if len(blob) < 12:
        raise TruncatedFile(f"{path}: header truncated")
    n, d = struct.unpack("<II", blob[4:12])
    expected = 12 + 4 * n * d
    if len(blob) != expected:
        raise TruncatedFile(
            f"{path}: size is {len(blob)} bytes, expected {expected} for {n}x{d}")
    if n == 0 or d == 0:
        raise ValidationError(f"{path}: embedding matrix must be non-empty")
    vectors = np.frombuffer(blob, dtype="<f4", offset=12).reshape(n, d)
    return EmbeddingMatrix(vectors=vectors.astype(np.float64))


def write_embeddings(matrix: EmbeddingMatrix, path) -> None:
    n, d = matrix.vectors.shape
    payload = matrix.vectors.astype("<f4").tobytes(order="C")
    Path(path).write_bytes(EMBEDDING_MAGIC + struct.pack("<II", n, d) + payload)


def _fixed(x: float) -> str:
    return format(float(x) + 0.0, ".6f")   # + 0.0 normalizes -0.0


def _render(value, indent: int) -> str:
    pad = "  " * indent
    if isinstance(value, dict):
        if not value:
            return "{}"
        parts = [f'{pad}  "{k}": {_render(v, indent + 1)}' for k, v in value.items()]
        return "{\n" + ",\n".join(parts) + "\n" + pad + "}"
    if isinstance(value, (list, tuple)):
        items = [_render(v, indent) for v in value]
        return "[" + ", ".join(items) + "]"
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        return _fixed(value)
    if value is None:
        return "null"
    return json.dumps(value)


def render_document(doc: dict) -> str:
    """Serialize a report-like mapping with fixed 6-decimal floats."""
    return _render(doc, 0) + "\n"


def report_document(report: PipelineReport) -> dict:
    """Flatten a pipeline report into a serializable mapping."""
    cfg = report.config
    return {
        "video_id": report.video_id,
        "trace_length": report.trace_length,
        "config": {
            "k_total": cfg.k_total,
            "wavelet_family": cfg.wavelet_family,
            "drift": cfg.drift,
            "height_factor": cfg.peak.height_factor,
            "prominence_factor": cfg.peak.prominence_factor,
            "min_distance_floor": cfg.peak.min_distance_floor,
            "min_distance_fraction": cfg.peak.min_distance_fraction,
            "weights": [cfg.weights.w_d, cfg.weights.w_a,
                        cfg.weights.w_m, cfg.weights.w_v],
            "eta": cfg.eta,
            "lambda": cfg.lam,
            "boundary_strategy": cfg.boundary_strategy,
            "selection_strategy": cfg.selection_strategy,
            "allocation_strategy": cfg.allocation_strategy,
        },
        "level_used": report.level_used,
        "boundaries": list(report.boundaries.boundaries),
        "segments": [
            {
                "id": sc.segment.id,
                "start": sc.segment.start,
                "end": sc.segment.end,
                "importance": sc.importance,
                "duration_term": sc.duration_term,
                "mean_term": sc.mean_term,
                "max_term": sc.max_term,
                "variance_term": sc.variance_term,
            }
            for sc in report.segment_scores
        ],
        "filter_tau": report.filter_tau,
        "surviving_ids": list(report.surviving_ids),
        "allocation": [{"segment_id": sid, "budget": k}
                       for sid, k in report.allocation.entries],
        "selection": {
            "strategy": report.selection.strategy,
            "selected": list(report.selection.selected),
            "per_segment": [
                {"segment_id": sid, "indices": list(picks), "anchor": anchor}
                for sid, picks, anchor in report.selection.per_segment
            ],
        },
        "notes": list(report.notes),
    }


def signals_document(report: PipelineReport) -> dict:
    """Exported intermediate signals (only present on wavelet runs)."""
    return {
        "video_id": report.video_id,
        "detail_signal": list(report.detail_signal or ()),
        "intensity_signal": list(report.intensity_signal or ()),
    }
