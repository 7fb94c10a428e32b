"""Scoring backends: frame -> (query relevance score, visual embedding).

Two backends are provided. ``histogram-v1`` is a self-contained stand-in
that needs no model weights: embeddings are unit-normalized color
histograms (real visual features, so diversity selection behaves sensibly)
and scores are a deterministic query-keyed projection of those histograms.
Its scores are reproducible and well-formed but carry no semantic
image-text alignment; it exists so the file contracts and the end-to-end
pipeline can be exercised offline. Any other model id is treated as an
image-text-matching checkpoint loaded through ``transformers``.
"""
from __future__ import annotations

import hashlib

import cv2
import numpy as np

from .config import HISTOGRAM_MODEL_ID, ScorerConfig
from .errors import ModelLoadError

HIST_BINS = (6, 6, 6)


class HistogramBackend:
    """Deterministic offline backend; see the module docstring."""

    score_kind = "query-keyed histogram projection (non-semantic stand-in)"

    def __init__(self, config: ScorerConfig):
        self.config = config

    @staticmethod
    def _embed(frames) -> np.ndarray:
        rows = []
        for frame in frames:
            hsv = cv2.cvtColor(frame, cv2.COLOR_BGR2HSV)
            hist = cv2.calcHist([hsv], [0, 1, 2], None, list(HIST_BINS),
                                [0, 180, 0, 256, 0, 256]).flatten()
            norm = float(np.linalg.norm(hist))
            rows.append(hist / norm if norm > 0 else
                        np.full(hist.shape, 1.0 / np.sqrt(hist.size)))
        return np.asarray(rows, dtype=np.float32)

    def score_and_embed(self, frames, query: str) -> tuple[np.ndarray, np.ndarray]:
        embeddings = self._embed(frames)
        digest = hashlib.sha256(query.encode("utf-8")).digest()
        seed = int.from_bytes(digest[:8], "little")
        rng = np.random.default_rng(seed)
        probe = rng.normal(size=embeddings.shape[1])
        probe /= np.linalg.norm(probe)
        # cosine against the query probe, mapped to (0, 1)
        scores = 0.5 * (1.0 + embeddings.astype(np.float64) @ probe)
        return scores, embeddings


class ItmBackend:
    """Image-text matching scorer backed by a pretrained checkpoint.

    Scores are the matched-class probability of the checkpoint's ITM head
    (recorded in the trace metadata); embeddings are the unit-normalized
    pooled visual features. Inference is deterministic: eval mode, no
    gradients, no sampling.
    """

    score_kind = "ITM head matched-class probability"

    def __init__(self, config: ScorerConfig):
        self.config = config
        try:
            import torch
            from transformers import AutoProcessor, BlipForImageTextRetrieval
        except ImportError as e:
            raise ModelLoadError(
                f"transformers/torch unavailable for model "
                f"{config.model_id!r}: {e}") from e
        self._torch = torch
        try:
            self.processor = AutoProcessor.from_pretrained(config.model_id)
            self.model = BlipForImageTextRetrieval.from_pretrained(config.model_id)
        except Exception as e:
            raise ModelLoadError(f"cannot load {config.model_id!r}: {e}") from e
        self.model.eval()
        self.model.to(config.device)

    def score_and_embed(self, frames, query: str) -> tuple[np.ndarray, np.ndarray]:
        torch = self._torch
        scores: list[float] = []
        embeddings: list[np.ndarray] = []
        bs = self.config.batch_size
        with torch.no_grad():
            for lo in range(0, len(frames), bs):
                batch = [cv2.cvtColor(f, cv2.COLOR_BGR2RGB)
                         for f in frames[lo:lo + bs]]
                inputs = self.processor(images=batch,
                                        text=[query] * len(batch),
                                        return_tensors="pt", padding=True)
                inputs = {k: v.to(self.config.device) for k, v in inputs.items()}
                out = self.model(**inputs, use_itm_head=True)
                probs = torch.softmax(out.itm_score, dim=-1)[:, 1]
                scores.extend(float(p) for p in probs.cpu())
                vision = self.model.vision_model(
                    pixel_values=inputs["pixel_values"])[0][:, 0]
                vision = torch.nn.functional.normalize(vision, dim=-1)
                embeddings.extend(
                    v.cpu().to(torch.float32).numpy() for v in vision)
        return (np.asarray(scores, dtype=np.float64),
                np.asarray(embeddings, dtype=np.float32))


def get_backend(config: ScorerConfig):
    if config.model_id == HISTOGRAM_MODEL_ID:
        return HistogramBackend(config)
    return ItmBackend(config)
