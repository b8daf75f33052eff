"""Frame enumeration: still images count one row each, videos are sampled
uniformly over their length."""

from __future__ import annotations

from pathlib import Path
from typing import Iterator

import numpy as np
from PIL import Image

from cift_extractor.errors import DecodeError

IMAGE_SUFFIXES = {".png", ".jpg", ".jpeg", ".bmp", ".webp"}
VIDEO_SUFFIXES = {".mp4", ".avi", ".mov", ".mkv", ".webm"}


def uniform_indices(total: int, count: int) -> np.ndarray:
    """Up to ``count`` distinct frame indices spread evenly over ``total``."""
    if total <= 0:
        return np.empty(0, dtype=int)
    if total <= count:
        return np.arange(total)
    return np.unique(np.round(np.linspace(0, total - 1, count)).astype(int))


def _video_frames(path: Path, sample_count: int) -> Iterator[tuple[str, Image.Image]]:
    import cv2

    capture = cv2.VideoCapture(str(path))
    if not capture.isOpened():
        raise DecodeError(f"cannot open video {path}")
    try:
        total = int(capture.get(cv2.CAP_PROP_FRAME_COUNT))
        wanted = set(uniform_indices(total, sample_count).tolist())
        index = 0
        while True:
            ok, frame = capture.read()
            if not ok:
                break
            if index in wanted:
                rgb = cv2.cvtColor(frame, cv2.COLOR_BGR2RGB)
                yield f"{path.name}#{index}", Image.fromarray(rgb)
            index += 1
    finally:
        capture.release()


def iter_frames(
    input_dir: str | Path, sample_count: int
) -> Iterator[tuple[str, Image.Image]]:
    """Yield (frame_id, RGB image) for every still image and every sampled
    video frame under ``input_dir``, in sorted file order.

    Raises DecodeError if the directory yields no frames or a file cannot
    be decoded.
    """
    input_dir = Path(input_dir)
    if not input_dir.is_dir():
        raise DecodeError(f"{input_dir} is not a directory")
    produced = 0
    for path in sorted(input_dir.iterdir()):
        suffix = path.suffix.lower()
        if suffix in IMAGE_SUFFIXES:
            try:
                with Image.open(path) as img:
                    frame = img.convert("RGB")
            except Exception as exc:
                raise DecodeError(f"cannot decode image {path}: {exc}") from None
            produced += 1
            yield path.name, frame
        elif suffix in VIDEO_SUFFIXES:
            for frame_id, frame in _video_frames(path, sample_count):
                produced += 1
                yield frame_id, frame
    if produced == 0:
        raise DecodeError(f"no decodable frames found under {input_dir}")
