import numpy as np
import pytest

from planvec.errors import ShapeError
from planvec.sr import conv2d, conv_transpose2d, pixel_shuffle, pixel_unshuffle

from oracles import conv2d_loop, conv_transpose2d_loop, pixel_shuffle_formula


def test_conv_identity_kernel():
    rng = np.random.RandomState(0)
    x = rng.rand(1, 6, 7).astype(np.float32)
    k = np.ones((1, 1, 1, 1), dtype=np.float32)
    b = np.zeros(1, dtype=np.float32)
    assert np.allclose(conv2d(x, k, b, 1, 0), x)


def test_conv_zero_input_gives_bias():
    x = np.zeros((3, 5, 5), dtype=np.float32)
    k = np.random.RandomState(1).randn(4, 3, 3, 3).astype(np.float32)
    b = np.array([1.0, -2.0, 0.5, 3.0], dtype=np.float32)
    out = conv2d(x, k, b, 1, 1)
    for c in range(4):
        assert np.allclose(out[c], b[c])


def test_conv_matches_loop_oracle():
    rng = np.random.RandomState(2)
    x = rng.randn(3, 8, 8).astype(np.float32)
    k = rng.randn(4, 3, 3, 3).astype(np.float32)
    b = rng.randn(4).astype(np.float32)
    got = conv2d(x, k, b, 1, 1)
    want = conv2d_loop(x, k, b, 1, 1)
    assert np.abs(got - want).max() < 1e-5


def test_conv_random_cases_200():
    rng = np.random.RandomState(3)
    for _ in range(200):
        c_in = rng.randint(1, 4)
        c_out = rng.randint(1, 4)
        kh = rng.randint(1, 4)
        kw = rng.randint(1, 4)
        stride = rng.randint(1, 3)
        pad = rng.randint(0, 3)
        h = rng.randint(kh, kh + 5)
        w = rng.randint(kw, kw + 5)
        x = rng.randn(c_in, h, w).astype(np.float32)
        k = rng.randn(c_out, c_in, kh, kw).astype(np.float32)
        b = rng.randn(c_out).astype(np.float32)
        got = conv2d(x, k, b, stride, pad)
        want = conv2d_loop(x, k, b, stride, pad)
        assert got.shape == want.shape
        assert np.abs(got - want).max() < 1e-5


def test_conv_shape_errors():
    x = np.zeros((2, 4, 4), dtype=np.float32)
    with pytest.raises(ShapeError):
        conv2d(x, np.zeros((1, 3, 3, 3), dtype=np.float32))  # channel mismatch
    with pytest.raises(ShapeError):
        conv2d(x, np.zeros((1, 2, 5, 5), dtype=np.float32))  # kernel larger than input


def test_deconv_single_tap():
    x = np.full((1, 1, 1), 2.5, dtype=np.float32)
    k = np.array([[[[1.0, 2.0], [3.0, 4.0]]]], dtype=np.float32)
    out = conv_transpose2d(x, k, None, stride=2, pad=0)
    assert out.shape == (1, 2, 2)
    assert np.allclose(out[0], 2.5 * k[0, 0])


def test_deconv_zero_input_bias():
    x = np.zeros((2, 3, 3), dtype=np.float32)
    k = np.random.RandomState(4).randn(2, 3, 4, 4).astype(np.float32)
    b = np.array([0.5, -1.0, 2.0], dtype=np.float32)
    out = conv_transpose2d(x, k, b, stride=2, pad=1)
    for c in range(3):
        assert np.allclose(out[c], b[c])


def test_deconv_random_cases_200():
    rng = np.random.RandomState(5)
    for _ in range(200):
        c_in = rng.randint(1, 4)
        c_out = rng.randint(1, 4)
        kh = rng.randint(1, 5)
        kw = rng.randint(1, 5)
        stride = rng.randint(1, 4)
        pad = rng.randint(0, min(kh, kw))
        h = rng.randint(1, 5)
        w = rng.randint(1, 5)
        if (h - 1) * stride - 2 * pad + kh < 1 or (w - 1) * stride - 2 * pad + kw < 1:
            continue
        x = rng.randn(c_in, h, w).astype(np.float32)
        k = rng.randn(c_in, c_out, kh, kw).astype(np.float32)
        b = rng.randn(c_out).astype(np.float32)
        got = conv_transpose2d(x, k, b, stride, pad)
        want = conv_transpose2d_loop(x, k, b, stride, pad)
        assert got.shape == want.shape
        assert np.abs(got - want).max() < 1e-5


def test_pixel_shuffle_hand_case():
    x = np.array([1.0, 2.0, 3.0, 4.0], dtype=np.float32).reshape(4, 1, 1)
    out = pixel_shuffle(x, 2)
    assert out.shape == (1, 2, 2)
    assert np.array_equal(out[0], [[1.0, 2.0], [3.0, 4.0]])


def test_pixel_shuffle_r1_identity():
    x = np.random.RandomState(6).randn(3, 4, 5).astype(np.float32)
    assert np.array_equal(pixel_shuffle(x, 1), x)


def test_pixel_shuffle_matches_formula():
    rng = np.random.RandomState(7)
    x = rng.randn(8, 3, 3).astype(np.float32)
    assert np.array_equal(pixel_shuffle(x, 2), pixel_shuffle_formula(x, 2))


def test_pixel_shuffle_random_exact():
    rng = np.random.RandomState(8)
    for _ in range(50):
        r = rng.randint(1, 4)
        c = rng.randint(1, 4) * r * r
        h = rng.randint(1, 5)
        w = rng.randint(1, 5)
        x = rng.randn(c, h, w).astype(np.float32)
        assert np.array_equal(pixel_shuffle(x, r), pixel_shuffle_formula(x, r))


def test_pixel_shuffle_inverse_identity():
    rng = np.random.RandomState(9)
    for r in (1, 2, 3):
        x = rng.randn(2 * r * r, 4, 6).astype(np.float32)
        assert np.array_equal(pixel_unshuffle(pixel_shuffle(x, r), r), x)


def test_pixel_shuffle_bad_channels():
    with pytest.raises(ShapeError):
        pixel_shuffle(np.zeros((3, 2, 2), dtype=np.float32), 2)
