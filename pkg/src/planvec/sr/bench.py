"""Wall-clock latency harness for the upscaling networks.

Reports the median of repeated end-to-end upscale() calls.  The CSV it
emits has one row per input size and the column order
``image_size,edsr,espcn,lapsrn,fsrcnn``; methodology (median, repetition
count, library versions) goes into leading comment lines, since timing
numbers are only comparable within one run on one machine.
"""

from __future__ import annotations

import csv
import io
import platform
import statistics
import time
from typing import Iterable, Mapping

import numpy as np

from ..tensorio import WeightBundle
from .engine import upscale
from .networks import NetworkSpec

BENCH_COLUMNS = ("edsr", "espcn", "lapsrn", "fsrcnn")


def benchmark_latency(
    spec: NetworkSpec,
    weights: WeightBundle,
    image: np.ndarray,
    repetitions: int = 5,
) -> float:
    """Median seconds over `repetitions` end-to-end upscale calls."""
    if repetitions < 1:
        raise ValueError("repetitions must be >= 1")
    times = []
    for _ in range(repetitions):
        t0 = time.perf_counter()
        upscale(spec, weights, image)
        times.append(time.perf_counter() - t0)
    return statistics.median(times)


def run_size_sweep(
    sizes: Iterable[tuple[int, int]],
    specs: Mapping[str, NetworkSpec],
    weights: Mapping[str, WeightBundle],
    repetitions: int = 5,
    seed: int = 0,
) -> list[dict[str, object]]:
    """Time each method on a random image per size; one result row per size."""
    rng = np.random.RandomState(seed)
    rows = []
    for h, w in sizes:
        image = rng.rand(h, w, 3).astype(np.float32)
        row: dict[str, object] = {"image_size": f"{h}x{w}"}
        for method in BENCH_COLUMNS:
            if method in specs:
                row[method] = benchmark_latency(specs[method], weights[method], image, repetitions)
        rows.append(row)
    return rows


def write_bench_csv(rows: list[dict[str, object]], sink, repetitions: int = 5) -> None:
    """Emit the latency table with methodology comments ahead of the header."""
    sink.write(f"# median of {repetitions} upscale() calls per cell, seconds\n")
    sink.write(f"# single process, numpy {np.__version__}, {platform.machine()}\n")
    writer = csv.DictWriter(sink, fieldnames=["image_size", *BENCH_COLUMNS])
    writer.writeheader()
    for row in rows:
        out = {"image_size": row["image_size"]}
        for method in BENCH_COLUMNS:
            out[method] = f"{row[method]:.3f}" if method in row else ""
        writer.writerow(out)


def render_bench_csv(rows: list[dict[str, object]], repetitions: int = 5) -> str:
    buf = io.StringIO()
    write_bench_csv(rows, buf, repetitions)
    return buf.getvalue()
