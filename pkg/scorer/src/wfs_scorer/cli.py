"""wfs-score: turn (video, query) into a score trace and an embedding file.

Exit codes mirror the selection CLI: 0 success, 1 bad flags or content
(decode/model failures included), 2 OS-level I/O failures.
"""
from __future__ import annotations

import argparse
import sys

from .config import ADAPTIVE_SCHEDULE, DEFAULT_SCHEDULE, ScorerConfig
from .errors import ScorerError
from .score import score_video, write_embedding_file, write_trace_file


class _CliError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _CliError(message)


def _build_parser() -> _Parser:
    parser = _Parser(prog="wfs-score", description=__doc__.splitlines()[0])
    parser.add_argument("--video", required=True, help="video file to score")
    parser.add_argument("--query", required=True, help="text query")
    parser.add_argument("--out-trace", required=True)
    parser.add_argument("--out-embeddings", required=True)
    parser.add_argument("--preset", choices=("fixed", "adaptive"),
                        default="fixed",
                        help="fixed: 1 fps regardless of duration; adaptive: "
                             "lower fps for longer videos")
    parser.add_argument("--model", default="histogram-v1",
                        help="'histogram-v1' (offline stand-in) or a "
                             "transformers image-text-matching checkpoint id")
    parser.add_argument("--batch-size", type=int, default=8)
    parser.add_argument("--device", default="cpu")
    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        schedule = ADAPTIVE_SCHEDULE if args.preset == "adaptive" \
            else DEFAULT_SCHEDULE
        try:
            config = ScorerConfig(fps_schedule=schedule, model_id=args.model,
                                  batch_size=args.batch_size,
                                  device=args.device)
        except ValueError as e:
            raise _CliError(str(e)) from e
        result = score_video(args.video, args.query, config)
        write_trace_file(result, args.out_trace)
        write_embedding_file(result, args.out_embeddings)
        print(f"scored {len(result.frame_indices)} frames of "
              f"{result.video_id!r} at {result.sample_fps} fps")
        return 0
    except _CliError as e:
        print(f"wfs-score: {e}", file=sys.stderr)
        return 1
    except ScorerError as e:
        print(f"wfs-score: {e}", file=sys.stderr)
        return 1
    except OSError as e:
        print(f"wfs-score: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
