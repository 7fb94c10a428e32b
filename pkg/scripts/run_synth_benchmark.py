#!/usr/bin/env python3
"""Noise sweep comparing boundary-detection strategies on synthetic traces.

For each noise level (expressed as a fraction of the minimum level step) the
script averages boundary precision/recall/F1 over many seeded traces, for
the wavelet detector and both raw-signal baselines.

Example:
    python scripts/run_synth_benchmark.py --n 96 --segments 3 --seeds 150
"""
import argparse

import numpy as np

from wfs import (PipelineConfig, SynthConfig, detect_boundaries_baseline,
                 eval_boundaries, generate, recall_window, run)

STRATEGIES = ("wavelet", "raw_local_minima", "raw_gradient")


def evaluate(n, segments, seeds, noise_fraction, min_step):
    window = recall_window(n)
    sums = {s: np.zeros(3) for s in STRATEGIES}
    for seed in range(seeds):
        trace, truth = generate(SynthConfig(
            n=n, num_segments=segments, noise_sigma=noise_fraction * min_step,
            seed=seed, min_step=min_step, level_range=(0.0, 1.0)))
        for strategy in STRATEGIES:
            if strategy == "wavelet":
                detected = run(trace, None, PipelineConfig(k_total=0, selection_strategy="topk")).boundaries
            else:
                detected = detect_boundaries_baseline(trace.scores, strategy)
            r = eval_boundaries(detected, truth, window)
            sums[strategy] += (r.precision, r.recall, r.f1)
    return {s: v / seeds for s, v in sums.items()}


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--n", type=int, default=96, help="trace length")
    parser.add_argument("--segments", type=int, default=3)
    parser.add_argument("--seeds", type=int, default=150)
    parser.add_argument("--min-step", type=float, default=0.5)
    parser.add_argument("--noise-fractions", default="0,0.1,0.3,0.5,1.0",
                        help="noise sigma as fractions of min-step")
    args = parser.parse_args()

    fractions = [float(v) for v in args.noise_fractions.split(",")]
    print(f"n={args.n} segments={args.segments} seeds={args.seeds} "
          f"min_step={args.min_step} window={recall_window(args.n)}")
    header = f"{'noise/step':>10} " + "".join(
        f"{s:>28}" for s in STRATEGIES)
    print(header)
    print(f"{'':>10} " + "".join(f"{'P':>10}{'R':>9}{'F1':>9}" for _ in STRATEGIES))
    for frac in fractions:
        means = evaluate(args.n, args.segments, args.seeds, frac,
                         args.min_step)
        row = f"{frac:>10.2f} "
        for s in STRATEGIES:
            p, r, f1 = means[s]
            row += f"{p:>10.3f}{r:>9.3f}{f1:>9.3f}"
        print(row)


if __name__ == "__main__":
    main()
