import numpy as np
import pytest
from PIL import Image


@pytest.fixture
def frame_dir(tmp_path):
    """Ten seeded 96x96 RGB noise frames on disk."""
    rng = np.random.default_rng(7)
    for i in range(10):
        pixels = rng.integers(0, 256, size=(96, 96, 3), dtype=np.uint8)
        Image.fromarray(pixels, "RGB").save(tmp_path / f"frame_{i:03d}.png")
    return tmp_path
