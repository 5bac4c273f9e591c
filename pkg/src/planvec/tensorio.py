"""Neutral binary tensor format (.fpt) and weight bundles.

Tensors are float32 numpy arrays in row-major (C) order; the array shape is
the tensor's dimension list.  The on-disk layout is:

    magic "FPTN" | version u8 = 1 | dtype u8 = 0 (f32) | ndim u8 |
    ndim x dim u32 LE | payload f32 LE row-major

so a written tensor occupies exactly 7 + 4*ndim + 4*prod(dims) bytes.

A weight bundle is a directory holding ``manifest.json`` — a JSON array of
``{"name": ..., "shape": [...], "file": relative path}`` — plus one .fpt
file per entry.
"""

from __future__ import annotations

import json
import struct
from pathlib import Path
from typing import BinaryIO, Iterable, Mapping

import numpy as np

from .errors import (
    BadMagicError,
    DuplicateNameError,
    InvalidDimError,
    MissingBlobError,
    ShapeMismatchError,
    TruncatedStreamError,
    UnsupportedFormatError,
)

MAGIC = b"FPTN"
VERSION = 1
DTYPE_F32 = 0

MANIFEST_NAME = "manifest.json"


def tensor_byte_size(dims: Iterable[int]) -> int:
    """Exact on-disk size of a tensor with the given dims."""
    dims = list(dims)
    n = 1
    for d in dims:
        n *= d
    return 7 + 4 * len(dims) + 4 * n


def _check_dims(dims: tuple[int, ...]) -> None:
    if len(dims) == 0:
        raise InvalidDimError("tensor must have at least one dimension")
    for d in dims:
        if d < 1:
            raise InvalidDimError(f"dimension {d} is not positive")
    if len(dims) > 255:
        raise InvalidDimError("more than 255 dimensions")


def write_tensor(t: np.ndarray, sink: BinaryIO) -> int:
    """Write one tensor to a binary sink. Returns the byte count written."""
    arr = np.asarray(t)
    _check_dims(arr.shape)
    arr = np.ascontiguousarray(arr, dtype=np.float32)
    header = MAGIC + struct.pack("<BBB", VERSION, DTYPE_F32, arr.ndim)
    header += struct.pack(f"<{arr.ndim}I", *arr.shape)
    payload = arr.tobytes()
    sink.write(header)
    sink.write(payload)
    return len(header) + len(payload)


def read_tensor(source: BinaryIO) -> np.ndarray:
    """Read one tensor from a binary stream, leaving the cursor just past it."""
    magic = source.read(4)
    if len(magic) < 4:
        raise TruncatedStreamError("stream ended inside the magic")
    if magic != MAGIC:
        raise BadMagicError(f"expected {MAGIC!r}, found {magic!r}")
    head = source.read(3)
    if len(head) < 3:
        raise TruncatedStreamError("stream ended inside the header")
    version, dtype, ndim = struct.unpack("<BBB", head)
    if version != VERSION:
        raise UnsupportedFormatError(f"unsupported version {version}")
    if dtype != DTYPE_F32:
        raise UnsupportedFormatError(f"unsupported dtype tag {dtype}")
    if ndim == 0:
        raise InvalidDimError("tensor with zero dimensions")
    raw_dims = source.read(4 * ndim)
    if len(raw_dims) < 4 * ndim:
        raise TruncatedStreamError("stream ended inside the dimension list")
    dims = struct.unpack(f"<{ndim}I", raw_dims)
    for d in dims:
        if d == 0:
            raise InvalidDimError("declared dimension of 0")
    count = 1
    for d in dims:
        count *= d
    payload = source.read(4 * count)
    if len(payload) < 4 * count:
        raise TruncatedStreamError(
            f"payload declares {count} floats, stream held {len(payload) // 4}"
        )
    data = np.frombuffer(payload, dtype="<f4", count=count)
    return data.reshape(dims).astype(np.float32, copy=True)


def save_tensor(t: np.ndarray, path: str | Path) -> int:
    with open(path, "wb") as f:
        return write_tensor(t, f)


def load_tensor(path: str | Path) -> np.ndarray:
    with open(path, "rb") as f:
        return read_tensor(f)


class WeightBundle:
    """Ordered, name-unique collection of tensors (exact-match lookup)."""

    def __init__(self, entries: Mapping[str, np.ndarray] | None = None):
        self._entries: dict[str, np.ndarray] = {}
        if entries:
            for name, arr in entries.items():
                self.add(name, arr)

    def add(self, name: str, arr: np.ndarray) -> None:
        if not name or not name.isascii():
            raise ValueError(f"invalid entry name {name!r}")
        if name in self._entries:
            raise DuplicateNameError(f"duplicate entry name {name!r}")
        self._entries[name] = np.ascontiguousarray(arr, dtype=np.float32)

    def __getitem__(self, name: str) -> np.ndarray:
        return self._entries[name]

    def __contains__(self, name: str) -> bool:
        return name in self._entries

    def __len__(self) -> int:
        return len(self._entries)

    def names(self) -> list[str]:
        return list(self._entries)

    def items(self):
        return self._entries.items()


def save_weight_bundle(bundle: WeightBundle, path: str | Path) -> None:
    """Write a bundle as a directory of .fpt blobs plus a JSON manifest."""
    root = Path(path)
    root.mkdir(parents=True, exist_ok=True)
    manifest = []
    for i, (name, arr) in enumerate(bundle.items()):
        fname = f"t{i:04d}.fpt"
        save_tensor(arr, root / fname)
        manifest.append({"name": name, "shape": list(arr.shape), "file": fname})
    with open(root / MANIFEST_NAME, "w", encoding="utf-8") as f:
        json.dump(manifest, f, indent=1)


def load_weight_bundle(path: str | Path) -> WeightBundle:
    """Load a bundle directory, checking names and shapes against the manifest."""
    root = Path(path)
    manifest_path = root / MANIFEST_NAME
    if not manifest_path.is_file():
        raise MissingBlobError(f"no {MANIFEST_NAME} under {root}")
    with open(manifest_path, encoding="utf-8") as f:
        manifest = json.load(f)
    bundle = WeightBundle()
    for entry in manifest:
        name = entry["name"]
        declared = tuple(int(d) for d in entry["shape"])
        blob = root / entry["file"]
        if not blob.is_file():
            raise MissingBlobError(f"entry {name!r}: missing blob {entry['file']!r}")
        arr = load_tensor(blob)
        if arr.shape != declared:
            raise ShapeMismatchError(
                f"entry {name!r}: manifest declares {declared}, blob holds {arr.shape}"
            )
        bundle.add(name, arr)
    return bundle
