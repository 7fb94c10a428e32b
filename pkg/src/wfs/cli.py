"""Command-line interface.

Subcommands: ``select`` (run the pipeline on one trace or a directory of
traces), ``inspect`` (print boundaries, segments, and importances), and
``synth`` (emit a synthetic trace plus a ground-truth sidecar).

Exit codes: 0 on success, 1 when flags or input content are invalid, 2 on
operating-system I/O failures. Diagnostics go to standard error.
"""
from __future__ import annotations

import argparse
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

from . import io_formats
from .allocation import ImportanceWeights
from .boundary import PeakParams
from .errors import WfsError
from .pipeline import PipelineConfig, run
from .synth import SynthConfig, generate
from .wavelet import FAMILY_NAMES


class _CliError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits with code 2 on bad flags; remap to the documented code 1
    def error(self, message):
        raise _CliError(message)


_BOUNDARY_FLAG = {"wavelet": "wavelet", "minima": "raw_local_minima",
                  "gradient": "raw_gradient"}


def _build_parser() -> _Parser:
    parser = _Parser(prog="wfs", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    sel = sub.add_parser("select", help="select keyframes for a trace")
    sel.add_argument("--scores", help="trace file (required unless --batch)")
    sel.add_argument("--embeddings", help="embedding file for MMR diversity")
    sel.add_argument("--k", type=int, required=True, help="total frame budget")
    sel.add_argument("--wavelet", default="db4", choices=FAMILY_NAMES)
    sel.add_argument("--drift", type=int, default=3)
    sel.add_argument("--alpha", type=float, default=0.5,
                     help="peak height factor")
    sel.add_argument("--beta", type=float, default=0.05,
                     help="peak prominence factor")
    sel.add_argument("--eta", type=float, default=1.2,
                     help="segment filtering aggressiveness")
    sel.add_argument("--lambda", dest="lam", type=float, default=0.5,
                     help="MMR relevance/diversity trade-off")
    sel.add_argument("--weights", default="0.4,0.2,0.3,0.1",
                     help="importance weights d,a,m,v")
    sel.add_argument("--boundary", default="wavelet",
                     choices=sorted(_BOUNDARY_FLAG))
    sel.add_argument("--selection", default="mmr",
                     choices=("mmr", "topk", "uniform"))
    sel.add_argument("--allocation", default="adaptive",
                     choices=("adaptive", "average"))
    sel.add_argument("--out", help="report path (default: stdout); "
                                   "directory in batch mode")
    sel.add_argument("--export-signals", dest="export_signals",
                     help="write intermediate signals to this path")
    sel.add_argument("--batch", help="process every *.trace file in a directory")
    sel.add_argument("--workers", type=int, default=4,
                     help="worker threads in batch mode")

    ins = sub.add_parser("inspect", help="print boundary/segment analysis")
    ins.add_argument("--scores", required=True)
    ins.add_argument("--wavelet", default="db4", choices=FAMILY_NAMES)
    ins.add_argument("--drift", type=int, default=3)
    ins.add_argument("--alpha", type=float, default=0.5)
    ins.add_argument("--beta", type=float, default=0.05)
    ins.add_argument("--eta", type=float, default=1.2)
    ins.add_argument("--weights", default="0.4,0.2,0.3,0.1")
    ins.add_argument("--boundary", default="wavelet",
                     choices=sorted(_BOUNDARY_FLAG))

    syn = sub.add_parser("synth", help="emit a synthetic trace with ground truth")
    syn.add_argument("--n", type=int, required=True, help="trace length")
    syn.add_argument("--segments", type=int, required=True)
    syn.add_argument("--level-low", type=float, default=0.0)
    syn.add_argument("--level-high", type=float, default=1.0)
    syn.add_argument("--min-step", type=float, default=0.5)
    syn.add_argument("--noise", type=float, default=0.0)
    syn.add_argument("--seed", type=int, default=0)
    syn.add_argument("--video-id", default=None)
    syn.add_argument("--out", required=True, help="trace output path")
    syn.add_argument("--truth", help="truth sidecar path "
                                     "(default: <out>.truth.json)")
    return parser


def _parse_weights(text: str) -> ImportanceWeights:
    parts = text.split(",")
    if len(parts) != 4:
        raise _CliError("--weights expects four comma-separated numbers d,a,m,v")
    try:
        d, a, m, v = (float(p) for p in parts)
    except ValueError:
        raise _CliError(f"--weights could not parse {text!r}") from None
    return ImportanceWeights(w_d=d, w_a=a, w_m=m, w_v=v)


def _config_from_args(args) -> PipelineConfig:
    if args.k < 0:
        raise _CliError("--k must be >= 0")
    try:
        return PipelineConfig(
            k_total=args.k,
            wavelet_family=args.wavelet,
            drift=args.drift,
            peak=PeakParams(height_factor=args.alpha,
                            prominence_factor=args.beta),
            weights=_parse_weights(args.weights),
            eta=args.eta,
            lam=args.lam,
            boundary_strategy=_BOUNDARY_FLAG[args.boundary],
            selection_strategy=args.selection,
            allocation_strategy=args.allocation,
        )
    except ValueError as e:
        raise _CliError(str(e)) from e


def _run_one(trace_path: str, embeddings_path: str | None,
             config: PipelineConfig, out_path: str | None,
             signals_path: str | None) -> None:
    trace = io_formats.read_trace(trace_path)
    embeddings = (io_formats.read_embeddings(embeddings_path)
                  if embeddings_path else None)
    report = run(trace, embeddings, config,
                 export_signals=signals_path is not None)
    rendered = io_formats.render_document(io_formats.report_document(report))
    if out_path:
        Path(out_path).write_text(rendered, encoding="utf-8")
    else:
        sys.stdout.write(rendered)
    if signals_path:
        Path(signals_path).write_text(
            io_formats.render_document(io_formats.signals_document(report)),
            encoding="utf-8")


def _cmd_select(args) -> int:
    config = _config_from_args(args)
    if args.batch:
        if args.scores:
            raise _CliError("--scores and --batch are mutually exclusive")
        out_dir = Path(args.out) if args.out else Path(args.batch)
        out_dir.mkdir(parents=True, exist_ok=True)
        traces = sorted(Path(args.batch).glob("*.trace"))
        if not traces:
            raise _CliError(f"no *.trace files in {args.batch}")
        if args.workers < 1:
            raise _CliError("--workers must be >= 1")

        def work(p: Path):
            _run_one(str(p), args.embeddings, config,
                     str(out_dir / (p.stem + ".report.json")), None)

        with ThreadPoolExecutor(max_workers=args.workers) as pool:
            futures = {pool.submit(work, p): p for p in traces}
            failures = []
            for fut, p in futures.items():
                try:
                    fut.result()
                except (WfsError, OSError) as e:
                    failures.append((p, e))
        for p, e in failures:
            print(f"wfs: {p}: {e}", file=sys.stderr)
        if failures:
            return 2 if any(isinstance(e, OSError) and not isinstance(e, WfsError)
                            for _, e in failures) else 1
        return 0
    if not args.scores:
        raise _CliError("--scores is required (or use --batch)")
    _run_one(args.scores, args.embeddings, config, args.out,
             args.export_signals)
    return 0


def _cmd_inspect(args) -> int:
    trace = io_formats.read_trace(args.scores)
    config = PipelineConfig(
        k_total=0,
        wavelet_family=args.wavelet,
        drift=args.drift,
        peak=PeakParams(height_factor=args.alpha, prominence_factor=args.beta),
        weights=_parse_weights(args.weights),
        eta=args.eta,
        boundary_strategy=_BOUNDARY_FLAG[args.boundary],
    )
    report = run(trace, None, config)
    w = sys.stdout.write
    w(f"video_id:       {report.video_id}\n")
    w(f"trace length:   {report.trace_length}\n")
    if report.level_used is not None:
        w(f"level used:     {report.level_used}\n")
    w(f"boundaries:     {list(report.boundaries.boundaries)}\n")
    w(f"filter tau:     {report.filter_tau:.6f}\n")
    surviving = set(report.surviving_ids)
    for sc in report.segment_scores:
        seg = sc.segment
        mark = "kept" if seg.id in surviving else "dropped"
        w(f"segment {seg.id}: [{seg.start}, {seg.end}] "
          f"importance={sc.importance:.6f} "
          f"(dur={sc.duration_term:.6f} mean={sc.mean_term:.6f} "
          f"max={sc.max_term:.6f} var={sc.variance_term:.6f}) {mark}\n")
    return 0


def _cmd_synth(args) -> int:
    try:
        config = SynthConfig(
            n=args.n,
            num_segments=args.segments,
            level_range=(args.level_low, args.level_high),
            min_step=args.min_step,
            noise_sigma=args.noise,
            seed=args.seed,
        )
    except ValueError as e:
        raise _CliError(str(e)) from e
    trace, truth = generate(config)
    if args.video_id:
        trace = type(trace)(scores=trace.scores,
                            frame_indices=trace.frame_indices,
                            fps=trace.fps, video_id=args.video_id)
    io_formats.write_trace(trace, args.out)
    truth_path = args.truth or (str(args.out) + ".truth.json")
    doc = {
        "version": 1,
        "video_id": trace.video_id,
        "true_boundaries": list(truth),
        "config": {
            "n": config.n,
            "num_segments": config.num_segments,
            "level_range": list(config.level_range),
            "min_step": config.min_step,
            "noise_sigma": config.noise_sigma,
            "seed": config.seed,
        },
    }
    Path(truth_path).write_text(io_formats.render_document(doc),
                                encoding="utf-8")
    return 0


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command == "select":
            return _cmd_select(args)
        if args.command == "inspect":
            return _cmd_inspect(args)
        return _cmd_synth(args)
    except _CliError as e:
        print(f"wfs: {e}", file=sys.stderr)
        return 1
    except WfsError as e:
        print(f"wfs: {e}", file=sys.stderr)
        return 1
    except OSError as e:
        print(f"wfs: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
