#!/usr/bin/env python3
"""Regenerate the committed fixture traces and their golden reports.

The goldens pin the exact bytes `wfs select` emits with default settings;
regenerating them is only legitimate when an intentional format or
numerical-contract change is being made.
"""
import pathlib
import sys

from wfs import RelevanceTrace, SynthConfig, generate, write_trace
from wfs.cli import main as cli_main

DATA = pathlib.Path(__file__).resolve().parent.parent / "tests" / "data"


def handmade_trace() -> RelevanceTrace:
    scores = (0.12, 0.18, 0.15, 0.22, 0.71, 0.74, 0.69, 0.80, 0.77, 0.31,
              0.28, 0.25, 0.33, 0.30, 0.55, 0.52, 0.58, 0.61, 0.57, 0.54)
    return RelevanceTrace(scores=scores,
                          frame_indices=tuple(i * 15 for i in range(20)),
                          fps=2.0,
                          video_id="handmade-short")


def build() -> None:
    DATA.mkdir(parents=True, exist_ok=True)
    trace, _ = generate(SynthConfig(n=120, num_segments=3, noise_sigma=0.1,
                                    seed=42))
    write_trace(trace, DATA / "synthetic_steps.trace")
    trace, _ = generate(SynthConfig(n=500, num_segments=4, noise_sigma=0.2,
                                    seed=7))
    write_trace(trace, DATA / "noisy_long.trace")
    write_trace(handmade_trace(), DATA / "handmade_short.trace",
                query="when does the activity change?")
    for stem in ("synthetic_steps", "noisy_long", "handmade_short"):
        code = cli_main(["select", "--scores", str(DATA / f"{stem}.trace"),
                         "--k", "8",
                         "--out", str(DATA / f"{stem}.report.golden.json")])
        if code != 0:
            sys.exit(code)
    print(f"fixtures written to {DATA}")


if __name__ == "__main__":
    build()
