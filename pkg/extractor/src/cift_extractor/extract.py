"""Extraction driver: frames in, one FVEC row per frame out."""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import numpy as np

from cift_extractor.backbones import load_backbone
from cift_extractor.errors import DecodeError
from cift_extractor.frames import iter_frames
from cift_extractor.fvec import write_fvec

BATCH_SIZE = 16
DEFAULT_SAMPLE_COUNT = 300


@dataclass(frozen=True)
class ExtractionJob:
    input_dir: Path
    backbone: str = "inception_v3"
    sample_count: int = DEFAULT_SAMPLE_COUNT
    output_path: Path = Path("features.fvec")
    pretrained: bool = True

    def __post_init__(self) -> None:
        if self.sample_count < 1:
            raise ValueError(f"sample_count must be >= 1, got {self.sample_count}")
        object.__setattr__(self, "input_dir", Path(self.input_dir))
        object.__setattr__(self, "output_path", Path(self.output_path))


def extract(job: ExtractionJob) -> tuple[int, int]:
    """Run the job; returns (rows, dims) of the written file.

    Inference runs in eval mode under no_grad on CPU, so the output is
    deterministic given the same inputs, backbone, and sampling parameters.
    """
    backbone = load_backbone(job.backbone, pretrained=job.pretrained)
    blocks: list[np.ndarray] = []
    batch = []
    for _, frame in iter_frames(job.input_dir, job.sample_count):
        batch.append(frame)
        if len(batch) == BATCH_SIZE:
            blocks.append(backbone.encode(batch))
            batch = []
    if batch:
        blocks.append(backbone.encode(batch))
    if not blocks:
        raise DecodeError(f"no frames extracted from {job.input_dir}")
    features = np.vstack(blocks)
    if features.shape[1] != backbone.width:
        raise DecodeError(
            f"{job.backbone} produced width {features.shape[1]}, expected {backbone.width}"
        )
    write_fvec(job.output_path, features)
    return features.shape
