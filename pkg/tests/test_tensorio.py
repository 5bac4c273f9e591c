import io
import json

import numpy as np
import pytest

from planvec import tensorio
from planvec.errors import (
    BadMagicError,
    DuplicateNameError,
    InvalidDimError,
    MissingBlobError,
    ShapeMismatchError,
    TruncatedStreamError,
    UnsupportedFormatError,
)


def roundtrip(arr):
    buf = io.BytesIO()
    tensorio.write_tensor(arr, buf)
    buf.seek(0)
    return tensorio.read_tensor(buf)


def test_write_byte_count_scalar_like():
    # 4 magic + 1 ver + 1 dtype + 1 ndim + 4 dim + 4 payload
    buf = io.BytesIO()
    n = tensorio.write_tensor(np.zeros([1], dtype=np.float32), buf)
    assert n == 15
    assert len(buf.getvalue()) == 15


def test_write_byte_count_2x3():
    # 7 fixed header bytes + 4*2 dims + 4*6 payload
    buf = io.BytesIO()
    n = tensorio.write_tensor(np.arange(6, dtype=np.float32).reshape(2, 3), buf)
    assert n == 7 + 8 + 24 == 39


def test_write_rejects_empty_dims():
    buf = io.BytesIO()
    with pytest.raises(InvalidDimError):
        tensorio.write_tensor(np.float32(3.0), buf)
    assert buf.getvalue() == b""  # nothing written before the failure


def test_roundtrip_simple():
    arr = np.array([[1, 2], [3, 4]], dtype=np.float32)
    got = roundtrip(arr)
    assert got.shape == (2, 2)
    assert np.array_equal(got, arr)


def test_bad_magic():
    with pytest.raises(BadMagicError):
        tensorio.read_tensor(io.BytesIO(b"NOPE" + b"\x00" * 20))


def test_truncated_payload():
    buf = io.BytesIO()
    tensorio.write_tensor(np.zeros(100, dtype=np.float32), buf)
    clipped = buf.getvalue()[: 11 + 4 * 50]  # header + half the floats
    with pytest.raises(TruncatedStreamError):
        tensorio.read_tensor(io.BytesIO(clipped))


def test_unsupported_version_and_dtype():
    buf = io.BytesIO()
    tensorio.write_tensor(np.zeros(2, dtype=np.float32), buf)
    raw = bytearray(buf.getvalue())
    raw[4] = 9
    with pytest.raises(UnsupportedFormatError):
        tensorio.read_tensor(io.BytesIO(bytes(raw)))
    raw = bytearray(buf.getvalue())
    raw[5] = 7
    with pytest.raises(UnsupportedFormatError):
        tensorio.read_tensor(io.BytesIO(bytes(raw)))


def test_zero_dim_rejected():
    buf = io.BytesIO()
    tensorio.write_tensor(np.zeros(2, dtype=np.float32), buf)
    raw = bytearray(buf.getvalue())
    raw[7:11] = (0).to_bytes(4, "little")
    with pytest.raises(InvalidDimError):
        tensorio.read_tensor(io.BytesIO(bytes(raw)))


def test_roundtrip_random_1000():
    rng = np.random.RandomState(7)
    for _ in range(1000):
        ndim = rng.randint(1, 5)
        dims = [rng.randint(1, 9) for _ in range(ndim)]
        arr = rng.randn(*dims).astype(np.float32)
        buf = io.BytesIO()
        n = tensorio.write_tensor(arr, buf)
        assert n == tensorio.tensor_byte_size(dims)
        buf.seek(0)
        got = tensorio.read_tensor(buf)
        assert got.shape == arr.shape
        assert got.tobytes() == arr.tobytes()  # bit-identical payload


def test_sequential_stream():
    a = np.arange(4, dtype=np.float32)
    b = np.ones((2, 2), dtype=np.float32) * 5
    buf = io.BytesIO()
    tensorio.write_tensor(a, buf)
    tensorio.write_tensor(b, buf)
    buf.seek(0)
    got_a = tensorio.read_tensor(buf)
    got_b = tensorio.read_tensor(buf)
    assert np.array_equal(got_a, a)
    assert np.array_equal(got_b, b)
    assert buf.read() == b""  # reader stops exactly at the payload end


def test_bundle_roundtrip(tmp_path):
    bundle = tensorio.WeightBundle(
        {
            "conv1.w": np.random.RandomState(0).randn(8, 1, 5, 5).astype(np.float32),
            "conv1.b": np.zeros(8, dtype=np.float32),
        }
    )
    tensorio.save_weight_bundle(bundle, tmp_path / "b")
    loaded = tensorio.load_weight_bundle(tmp_path / "b")
    assert len(loaded) == 2
    assert loaded["conv1.w"].shape == (8, 1, 5, 5)
    assert np.array_equal(loaded["conv1.w"], bundle["conv1.w"])
    assert loaded.names() == ["conv1.w", "conv1.b"]


def test_bundle_missing_blob(tmp_path):
    bundle = tensorio.WeightBundle({"a": np.zeros(3, dtype=np.float32)})
    tensorio.save_weight_bundle(bundle, tmp_path / "b")
    (tmp_path / "b" / "t0000.fpt").unlink()
    with pytest.raises(MissingBlobError):
        tensorio.load_weight_bundle(tmp_path / "b")


def test_bundle_shape_mismatch(tmp_path):
    bundle = tensorio.WeightBundle({"a": np.zeros(3, dtype=np.float32)})
    tensorio.save_weight_bundle(bundle, tmp_path / "b")
    tensorio.save_tensor(np.zeros(4, dtype=np.float32), tmp_path / "b" / "t0000.fpt")
    with pytest.raises(ShapeMismatchError):
        tensorio.load_weight_bundle(tmp_path / "b")


def test_bundle_duplicate_name(tmp_path):
    root = tmp_path / "b"
    root.mkdir()
    tensorio.save_tensor(np.zeros(3, dtype=np.float32), root / "t0000.fpt")
    entry = {"name": "conv1.w", "shape": [3], "file": "t0000.fpt"}
    (root / "manifest.json").write_text(json.dumps([entry, entry]))
    with pytest.raises(DuplicateNameError):
        tensorio.load_weight_bundle(root)


def test_bundle_add_duplicate():
    bundle = tensorio.WeightBundle()
    bundle.add("x", np.zeros(1, dtype=np.float32))
    with pytest.raises(DuplicateNameError):
        bundle.add("x", np.zeros(2, dtype=np.float32))
