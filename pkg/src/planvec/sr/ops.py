"""Convolution primitives on CHW float32 arrays.

conv2d computes direct cross-correlation with zero padding.  Inner products
are delegated to BLAS: the kernel is unrolled into one contiguous
(C_out, C_in) matrix per tap, applied to the padded input as a GEMM, and the
shifted partial products are accumulated.  This is arithmetically the same
sum as the quadruple loop, just grouped per tap.
"""

from __future__ import annotations

import numpy as np

from ..errors import ShapeError


def _as_f32(a: np.ndarray) -> np.ndarray:
    return np.ascontiguousarray(a, dtype=np.float32)


def conv2d(
    x: np.ndarray,
    kernel: np.ndarray,
    bias: np.ndarray | None = None,
    stride: int = 1,
    pad: int = 0,
) -> np.ndarray:
    """Cross-correlate x [C_in,H,W] with kernel [C_out,C_in,kh,kw].

    Output [C_out,H',W'] with H' = (H + 2*pad - kh)//stride + 1; zero padding.
    """
    x = _as_f32(x)
    kernel = _as_f32(kernel)
    if x.ndim != 3 or kernel.ndim != 4:
        raise ShapeError(f"conv2d expects CHW input and 4-d kernel, got {x.shape} / {kernel.shape}")
    c_in, h, w = x.shape
    c_out, kc_in, kh, kw = kernel.shape
    if kc_in != c_in:
        raise ShapeError(f"kernel expects {kc_in} input channels, input has {c_in}")
    if stride < 1 or pad < 0:
        raise ShapeError(f"bad stride/pad {stride}/{pad}")
    ho = (h + 2 * pad - kh) // stride + 1
    wo = (w + 2 * pad - kw) // stride + 1
    if h + 2 * pad - kh < 0 or w + 2 * pad - kw < 0 or ho < 1 or wo < 1:
        raise ShapeError(
            f"conv2d output not positive for input {h}x{w}, "
            f"kernel {kh}x{kw}, stride {stride}, pad {pad}"
        )
    if bias is not None:
        bias = _as_f32(bias)
        if bias.shape != (c_out,):
            raise ShapeError(f"bias shape {bias.shape} != ({c_out},)")

    xp = np.pad(x, ((0, 0), (pad, pad), (pad, pad))) if pad else x
    hp, wp = xp.shape[1:]
    flat = xp.reshape(c_in, hp * wp)
    # one contiguous (C_out, C_in) matrix per kernel tap
    taps = np.ascontiguousarray(kernel.transpose(2, 3, 0, 1))
    out = np.zeros((c_out, ho, wo), dtype=np.float32)
    buf = np.empty((c_out, hp * wp), dtype=np.float32)
    for dy in range(kh):
        for dx in range(kw):
            np.matmul(taps[dy, dx], flat, out=buf)
            shifted = buf.reshape(c_out, hp, wp)[
                :, dy : dy + (ho - 1) * stride + 1 : stride, dx : dx + (wo - 1) * stride + 1 : stride
            ]
            out += shifted
    if bias is not None:
        out += bias[:, None, None]
    return out


def conv_transpose2d(
    x: np.ndarray,
    kernel: np.ndarray,
    bias: np.ndarray | None = None,
    stride: int = 1,
    pad: int = 0,
) -> np.ndarray:
    """Transposed convolution (scatter-add of input taps times kernel).

    kernel is [C_in, C_out, kh, kw]; output size (H-1)*stride - 2*pad + kh.
    Implemented as zero-stuffing by stride followed by a flipped-kernel conv,
    which is the same scatter-add sum.
    """
    x = _as_f32(x)
    kernel = _as_f32(kernel)
    if x.ndim != 3 or kernel.ndim != 4:
        raise ShapeError(f"conv_transpose2d expects CHW input and 4-d kernel, got {x.shape} / {kernel.shape}")
    c_in, h, w = x.shape
    kc_in, c_out, kh, kw = kernel.shape
    if kc_in != c_in:
        raise ShapeError(f"kernel expects {kc_in} input channels, input has {c_in}")
    if stride < 1 or pad < 0:
        raise ShapeError(f"bad stride/pad {stride}/{pad}")
    ho = (h - 1) * stride - 2 * pad + kh
    wo = (w - 1) * stride - 2 * pad + kw
    if ho < 1 or wo < 1:
        raise ShapeError(f"conv_transpose2d output {ho}x{wo} not positive")

    # zero-stuff by stride, full correlation with the flipped kernel, then
    # crop `pad` from each border
    ph, pw = kh - 1, kw - 1
    stuffed = np.zeros(
        (c_in, (h - 1) * stride + 1 + 2 * ph, (w - 1) * stride + 1 + 2 * pw), dtype=np.float32
    )
    stuffed[:, ph : ph + (h - 1) * stride + 1 : stride, pw : pw + (w - 1) * stride + 1 : stride] = x
    flipped = np.ascontiguousarray(kernel[:, :, ::-1, ::-1].transpose(1, 0, 2, 3))
    full = conv2d(stuffed, flipped, bias, stride=1, pad=0)
    return full[:, pad : pad + ho, pad : pad + wo].copy() if pad else full


def pixel_shuffle(x: np.ndarray, r: int) -> np.ndarray:
    """Rearrange [C*r^2, H, W] into [C, r*H, r*W].

    out[c, y, x] = in[c*r^2 + r*(y mod r) + (x mod r), y//r, x//r]
    """
    if r < 1:
        raise ShapeError(f"shuffle factor {r} < 1")
    c2, h, w = x.shape
    if c2 % (r * r):
        raise ShapeError(f"{c2} channels not divisible by r^2 = {r * r}")
    c = c2 // (r * r)
    return (
        x.reshape(c, r, r, h, w).transpose(0, 3, 1, 4, 2).reshape(c, h * r, w * r).copy()
    )


def pixel_unshuffle(x: np.ndarray, r: int) -> np.ndarray:
    """Inverse of pixel_shuffle: [C, r*H, r*W] -> [C*r^2, H, W]."""
    if r < 1:
        raise ShapeError(f"shuffle factor {r} < 1")
    c, hr, wr = x.shape
    if hr % r or wr % r:
        raise ShapeError(f"spatial dims {hr}x{wr} not divisible by {r}")
    h, w = hr // r, wr // r
    return x.reshape(c, h, r, w, r).transpose(0, 2, 4, 1, 3).reshape(c * r * r, h, w).copy()


def relu(x: np.ndarray) -> np.ndarray:
    return np.maximum(x, 0.0)


def leaky_relu(x: np.ndarray, slope: float) -> np.ndarray:
    return np.where(x >= 0, x, x * np.float32(slope))


def prelu(x: np.ndarray, slopes: np.ndarray) -> np.ndarray:
    """Per-channel parametric ReLU on a CHW array."""
    if slopes.shape != (x.shape[0],):
        raise ShapeError(f"prelu slopes {slopes.shape} != ({x.shape[0]},)")
    return np.where(x >= 0, x, x * slopes[:, None, None].astype(np.float32))
