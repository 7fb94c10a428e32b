import json

import numpy as np
import pytest

from wfs import (EmbeddingMatrix, MagicMismatch, ParseError, RelevanceTrace,
                 TruncatedFile, ValidationError, read_embeddings, read_trace,
                 render_document, write_embeddings, write_trace)


def write_doc(tmp_path, doc, name="t.trace"):
    p = tmp_path / name
    p.write_text(json.dumps(doc), encoding="utf-8")
    return p


VALID = {
    "version": 1,
    "video_id": "clip-1",
    "fps": 1.0,
    "frame_indices": [0, 30, 60],
    "scores": [0.5, 0.75, 0.25],
}


# ------------------------------------------------------------------- traces

def test_minimal_single_frame_trace(tmp_path):
    doc = {"version": 1, "video_id": "v", "fps": 2.0,
           "frame_indices": [7], "scores": [0.9]}
    trace = read_trace(write_doc(tmp_path, doc))
    assert len(trace) == 1
    assert trace.frame_indices == (7,)
    assert trace.fps == 2.0


def test_valid_trace_roundtrip(tmp_path):
    trace = RelevanceTrace(scores=(0.5, 0.75), frame_indices=(0, 30),
                           fps=1.0, video_id="x")
    p = tmp_path / "x.trace"
    write_trace(trace, p, query="what happens?", meta={"scorer": "test"})
    again = read_trace(p)
    assert again == trace


def test_mismatched_array_lengths(tmp_path):
    doc = dict(VALID, scores=[0.5, 0.75])
    with pytest.raises(ValidationError):
        read_trace(write_doc(tmp_path, doc))


def test_unknown_version_named_in_error(tmp_path):
    doc = dict(VALID, version=3)
    with pytest.raises(ParseError, match="3"):
        read_trace(write_doc(tmp_path, doc))


def test_malformed_json_reports_location(tmp_path):
    p = tmp_path / "bad.trace"
    p.write_text("{ not json", encoding="utf-8")
    with pytest.raises(ParseError, match="line 1"):
        read_trace(p)


def test_missing_field(tmp_path):
    doc = {k: v for k, v in VALID.items() if k != "fps"}
    with pytest.raises(ParseError, match="fps"):
        read_trace(write_doc(tmp_path, doc))


def test_non_increasing_indices(tmp_path):
    doc = dict(VALID, frame_indices=[0, 60, 60])
    with pytest.raises(ValidationError, match="increasing"):
        read_trace(write_doc(tmp_path, doc))


def test_bad_fps(tmp_path):
    doc = dict(VALID, fps=0)
    with pytest.raises(ValidationError, match="fps"):
        read_trace(write_doc(tmp_path, doc))


def test_empty_trace_rejected(tmp_path):
    doc = dict(VALID, frame_indices=[], scores=[])
    with pytest.raises(ValidationError):
        read_trace(write_doc(tmp_path, doc))


def test_non_numeric_scores_rejected(tmp_path):
    doc = dict(VALID, scores=[0.5, "high", 0.25])
    with pytest.raises(ValidationError, match="numbers"):
        read_trace(write_doc(tmp_path, doc))


# --------------------------------------------------------------- embeddings

def test_embeddings_roundtrip_bit_exact(tmp_path):
    rng = np.random.default_rng(0)
    matrix = EmbeddingMatrix(rng.normal(size=(7, 3)))
    p1 = tmp_path / "a.emb"
    p2 = tmp_path / "b.emb"
    write_embeddings(matrix, p1)
    again = read_embeddings(p1)
    write_embeddings(again, p2)
    assert p1.read_bytes() == p2.read_bytes()
    np.testing.assert_array_equal(
        again.vectors, matrix.vectors.astype("<f4").astype(np.float64))
    assert again.dim == 3


def test_truncated_embedding_file(tmp_path):
    rng = np.random.default_rng(1)
    p = tmp_path / "t.emb"
    write_embeddings(EmbeddingMatrix(rng.normal(size=(4, 2))), p)
    blob = p.read_bytes()
    p.write_bytes(blob[:-1])
    with pytest.raises(TruncatedFile):
        read_embeddings(p)
    p.write_bytes(blob + b"\x00")
    with pytest.raises(TruncatedFile):
        read_embeddings(p)


def test_magic_mismatch(tmp_path):
    p = tmp_path / "t.emb"
    p.write_bytes(b"NOPE" + b"\x00" * 16)
    with pytest.raises(MagicMismatch):
        read_embeddings(p)


def test_zero_row_embedding_file_rejected(tmp_path):
    import struct
    p = tmp_path / "t.emb"
    p.write_bytes(b"WFSE" + struct.pack("<II", 0, 4))
    with pytest.raises(ValidationError):
        read_embeddings(p)


# ---------------------------------------------------------------- rendering

def test_render_fixed_decimals():
    doc = {"a": 0.65, "b": -0.0, "c": [1, 2.5], "d": {"e": None, "f": True},
           "g": "text"}
    out = render_document(doc)
    assert '"a": 0.650000' in out
    assert '"b": 0.000000' in out
    assert '"c": [1, 2.500000]' in out
    assert '"e": null' in out
    assert '"f": true' in out
    assert out.endswith("\n")


def test_render_is_deterministic():
    doc = {"x": 1 / 3, "y": [0.1 + 0.2]}
    assert render_document(doc) == render_document(doc)
    assert '"y": [0.300000]' in render_document(doc)


def test_non_finite_scores_rejected(tmp_path):
    p = tmp_path / "nan.trace"
    p.write_text('{"version": 1, "video_id": "v", "fps": 1.0, '
                 '"frame_indices": [0, 1], "scores": [0.5, NaN]}',
                 encoding="utf-8")
    with pytest.raises(ValidationError, match="finite"):
        read_trace(p)
