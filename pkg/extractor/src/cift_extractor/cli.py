"""CLI: extract features from an image/video directory into an FVEC file."""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from cift_extractor.backbones import LOADERS
from cift_extractor.errors import BackboneUnavailable, DecodeError
from cift_extractor.extract import DEFAULT_SAMPLE_COUNT, ExtractionJob, extract


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(
        prog="cift-extract",
        description="Write one FVEC feature row per frame using a pretrained vision backbone.",
    )
    parser.add_argument("--input", required=True, help="directory of frame images and/or videos")
    parser.add_argument("--backbone", choices=sorted(LOADERS), default="inception_v3")
    parser.add_argument(
        "--sample-count",
        type=int,
        default=DEFAULT_SAMPLE_COUNT,
        help="frames sampled uniformly per video (default 300); still images always count once",
    )
    parser.add_argument("--out", required=True, help="output FVEC path")
    parser.add_argument(
        "--random-init",
        action="store_true",
        help="use seeded random weights instead of pretrained ones "
        "(shape/format testing only; features are meaningless for curation)",
    )
    args = parser.parse_args(argv)
    job = ExtractionJob(
        input_dir=Path(args.input),
        backbone=args.backbone,
        sample_count=args.sample_count,
        output_path=Path(args.out),
        pretrained=not args.random_init,
    )
    try:
        rows, dims = extract(job)
    except BackboneUnavailable as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 4
    except DecodeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    print(f"wrote {rows}x{dims} features to {job.output_path}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
