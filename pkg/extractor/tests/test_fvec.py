import struct

import numpy as np
import pytest

from cift_extractor.fvec import read_fvec, write_fvec


def test_header_layout(tmp_path):
    path = tmp_path / "m.fvec"
    write_fvec(path, np.arange(6, dtype=np.float32).reshape(2, 3))
    raw = path.read_bytes()
    assert raw[:8] == b"CIFTFVEC"
    version, = struct.unpack_from("<I", raw, 8)
    n, d = struct.unpack_from("<QQ", raw, 12)
    assert (version, n, d) == (1, 2, 3)
    assert raw[28] == 1 and raw[29:32] == b"\x00\x00\x00"
    assert len(raw) == 32 + 24


def test_round_trip(tmp_path):
    path = tmp_path / "m.fvec"
    data = np.random.default_rng(0).normal(size=(5, 8)).astype(np.float32)
    write_fvec(path, data)
    np.testing.assert_array_equal(read_fvec(path), data)


def test_rejects_empty(tmp_path):
    with pytest.raises(ValueError):
        write_fvec(tmp_path / "m.fvec", np.empty((0, 3), dtype=np.float32))


def test_rejects_nonfinite(tmp_path):
    with pytest.raises(ValueError):
        write_fvec(tmp_path / "m.fvec", np.array([[np.nan]], dtype=np.float32))
