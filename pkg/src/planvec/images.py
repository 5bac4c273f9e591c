"""PNG image I/O and color transforms.

Images are float32 arrays in [0, 1], shaped HxW (luma) or HxWx3 (RGB).
PNG is the only supported file format (lossless, so upscaling scores are
not confounded by compression).
"""

from __future__ import annotations

from pathlib import Path

import numpy as np
from PIL import Image

# ITU-R BT.601 luma weights
_LUMA = np.array([0.299, 0.587, 0.114], dtype=np.float64)


def read_png(path: str | Path) -> np.ndarray:
    img = Image.open(path)
    if img.mode in ("L", "I;16", "I"):
        arr = np.asarray(img.convert("L"), dtype=np.float32) / 255.0
        return arr
    arr = np.asarray(img.convert("RGB"), dtype=np.float32) / 255.0
    return arr


def write_png(image: np.ndarray, path: str | Path) -> None:
    arr = np.clip(np.asarray(image), 0.0, 1.0)
    data = (arr * 255.0 + 0.5).astype(np.uint8)
    mode = "L" if data.ndim == 2 else "RGB"
    Image.fromarray(data, mode=mode).save(path, format="PNG")


def luma(rgb: np.ndarray) -> np.ndarray:
    """BT.601 luma of an HxWx3 image."""
    return (rgb.astype(np.float64) @ _LUMA).astype(np.float32)


def rgb_to_ycbcr(rgb: np.ndarray) -> np.ndarray:
    """Full-range BT.601 YCbCr, all three planes kept in [0, 1]."""
    r, g, b = (rgb[..., i].astype(np.float64) for i in range(3))
    y = 0.299 * r + 0.587 * g + 0.114 * b
    cb = 0.5 - 0.168736 * r - 0.331264 * g + 0.5 * b
    cr = 0.5 + 0.5 * r - 0.418688 * g - 0.081312 * b
    return np.stack([y, cb, cr], axis=-1).astype(np.float32)


def ycbcr_to_rgb(ycc: np.ndarray) -> np.ndarray:
    y, cb, cr = (ycc[..., i].astype(np.float64) for i in range(3))
    r = y + 1.402 * (cr - 0.5)
    g = y - 0.344136 * (cb - 0.5) - 0.714136 * (cr - 0.5)
    b = y + 1.772 * (cb - 0.5)
    return np.stack([r, g, b], axis=-1).astype(np.float32)
