import numpy as np
import pytest

from cift_extractor.errors import DecodeError
from cift_extractor.frames import iter_frames, uniform_indices


class TestUniformIndices:
    def test_fewer_frames_than_requested_takes_all(self):
        np.testing.assert_array_equal(uniform_indices(4, 10), [0, 1, 2, 3])

    def test_endpoints_included(self):
        idx = uniform_indices(300, 5)
        assert idx[0] == 0 and idx[-1] == 299 and len(idx) == 5

    def test_indices_strictly_increasing(self):
        idx = uniform_indices(2400, 300)
        assert len(idx) == 300
        assert (np.diff(idx) > 0).all()


class TestIterFrames:
    def test_images_yield_one_row_each(self, frame_dir):
        frames = list(iter_frames(frame_dir, sample_count=300))
        assert len(frames) == 10
        assert [fid for fid, _ in frames] == sorted(fid for fid, _ in frames)

    def test_empty_dir_names_directory(self, tmp_path):
        with pytest.raises(DecodeError, match=str(tmp_path)):
            list(iter_frames(tmp_path, sample_count=5))

    def test_missing_dir(self, tmp_path):
        with pytest.raises(DecodeError):
            list(iter_frames(tmp_path / "absent", sample_count=5))

    def test_corrupt_image(self, tmp_path):
        (tmp_path / "bad.png").write_bytes(b"not a png")
        with pytest.raises(DecodeError, match="bad.png"):
            list(iter_frames(tmp_path, sample_count=5))

    def test_video_sampling(self, tmp_path):
        cv2 = pytest.importorskip("cv2")
        path = tmp_path / "clip.avi"
        writer = cv2.VideoWriter(
            str(path), cv2.VideoWriter_fourcc(*"MJPG"), 30.0, (64, 48)
        )
        if not writer.isOpened():
            pytest.skip("no MJPG encoder in this OpenCV build")
        rng = np.random.default_rng(1)
        for _ in range(30):
            writer.write(rng.integers(0, 256, size=(48, 64, 3), dtype=np.uint8))
        writer.release()
        frames = list(iter_frames(tmp_path, sample_count=5))
        assert len(frames) == 5
        assert all(fid.startswith("clip.avi#") for fid, _ in frames)
        assert frames[0][1].size == (64, 48)
