"""Forward execution of layer plans and the end-to-end upscale entry point."""

from __future__ import annotations

import numpy as np

from ..errors import ShapeError, WeightError
from ..images import rgb_to_ycbcr, ycbcr_to_rgb
from ..tensorio import WeightBundle
from . import ops
from .bicubic import bicubic_resize
from .networks import (
    Activation,
    Conv,
    ConvTranspose,
    NetworkSpec,
    PixelShuffle,
    ResidualAdd,
    ScaleBy,
)


def sr_gate(height: int, width: int, limit: int = 800) -> bool:
    """Apply super-resolution only to images smaller than limit x limit."""
    if height < 1 or width < 1:
        raise ValueError(f"non-positive image dims {height}x{width}")
    return height < limit and width < limit


def check_weights(spec: NetworkSpec, weights: WeightBundle) -> None:
    """Verify every named parameter exists with the declared shape."""
    for name, shape in spec.weight_shapes().items():
        if name not in weights:
            raise WeightError(f"missing weight {name!r} for {spec.architecture} x{spec.scale_factor}")
        got = weights[name].shape
        if got != shape:
            raise WeightError(f"weight {name!r}: expected shape {shape}, bundle holds {got}")


def run_network(spec: NetworkSpec, weights: WeightBundle, x: np.ndarray) -> np.ndarray:
    """Execute a plan on a CHW float32 array and return the CHW result.

    Intermediate outputs are freed as soon as no later layer references
    them, which keeps deep plans within a few activation buffers.
    """
    if x.ndim != 3 or x.shape[0] != spec.in_channels:
        raise ShapeError(f"plan expects [{spec.in_channels},H,W] input, got {x.shape}")
    # last layer index that reads each produced value
    last_use: dict[int, int] = {}
    for i, layer in enumerate(spec.layers):
        src = getattr(layer, "source", None)
        last_use[i - 1 if src is None else src] = i
        if isinstance(layer, ResidualAdd):
            last_use[layer.other] = i

    live: dict[int, np.ndarray] = {-1: np.ascontiguousarray(x, dtype=np.float32)}
    out: np.ndarray | None = None
    for i, layer in enumerate(spec.layers):
        src = getattr(layer, "source", None)
        src = i - 1 if src is None else src
        cur = live[src]
        if isinstance(layer, Conv):
            out = ops.conv2d(cur, weights[f"{i}.w"], weights[f"{i}.b"], layer.stride, layer.pad)
        elif isinstance(layer, ConvTranspose):
            out = ops.conv_transpose2d(cur, weights[f"{i}.w"], weights[f"{i}.b"], layer.stride, layer.pad)
        elif isinstance(layer, Activation):
            if layer.kind == "relu":
                out = ops.relu(cur)
            elif layer.kind == "prelu":
                out = ops.prelu(cur, weights[f"{i}.w"])
            else:
                out = ops.leaky_relu(cur, layer.slope)
        elif isinstance(layer, PixelShuffle):
            out = ops.pixel_shuffle(cur, layer.factor)
        elif isinstance(layer, ResidualAdd):
            out = cur + live[layer.other]
        elif isinstance(layer, ScaleBy):
            out = cur * np.float32(layer.constant)
        else:
            raise ShapeError(f"unknown layer type {type(layer).__name__}")
        live[i] = out
        for idx in [k for k, last in last_use.items() if last == i]:
            live.pop(idx, None)
    if out is None:
        raise ShapeError("empty layer plan")
    return out


def upscale(spec: NetworkSpec, weights: WeightBundle, image: np.ndarray) -> np.ndarray:
    """Upscale an HxW or HxWx3 image in [0,1] by the plan's scale factor.

    RGB-native plans (EDSR) see all three channels; luma plans process the
    BT.601 Y plane and the chroma planes are upscaled bicubically.  Samples
    are clamped to [0, 1] at the output only.
    """
    img = np.asarray(image, dtype=np.float32)
    squeeze = False
    if img.ndim == 2:
        img = img[:, :, None]
        squeeze = True
    if img.ndim != 3 or img.shape[2] not in (1, 3):
        raise ShapeError(f"expected HxW or HxWx{{1,3}} image, got {img.shape}")
    h, w, c = img.shape
    if h < 1 or w < 1:
        raise ShapeError("image with an empty dimension")
    check_weights(spec, weights)
    factor = spec.scale_factor

    if spec.in_channels == 3:
        planes = img if c == 3 else np.repeat(img, 3, axis=2)
        out = run_network(spec, weights, planes.transpose(2, 0, 1)).transpose(1, 2, 0)
        if c == 1:
            out = out.mean(axis=2, keepdims=True)
    elif c == 1:
        out = run_network(spec, weights, img.transpose(2, 0, 1)).transpose(1, 2, 0)
    else:
        ycc = rgb_to_ycbcr(img)
        y = run_network(spec, weights, ycc[None, :, :, 0])[0]
        chroma = bicubic_resize(ycc[:, :, 1:], factor)
        out = ycbcr_to_rgb(np.concatenate([y[:, :, None], chroma], axis=2))

    out = np.clip(out, 0.0, 1.0).astype(np.float32)
    if out.shape[:2] != (factor * h, factor * w):
        raise ShapeError(f"plan produced {out.shape[:2]}, expected {(factor * h, factor * w)}")
    return out[:, :, 0] if squeeze else out
