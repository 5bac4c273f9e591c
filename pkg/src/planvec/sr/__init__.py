from .ops import conv2d, conv_transpose2d, pixel_shuffle, pixel_unshuffle
from .bicubic import bicubic_resize
from .networks import (
    ARCHITECTURES,
    Activation,
    Conv,
    ConvTranspose,
    NetworkSpec,
    PixelShuffle,
    ResidualAdd,
    ScaleBy,
    build_network,
    count_params,
    random_weights,
)
from .engine import run_network, sr_gate, upscale
from .bench import BENCH_COLUMNS, benchmark_latency, run_size_sweep, write_bench_csv

__all__ = [
    "ARCHITECTURES",
    "Activation",
    "BENCH_COLUMNS",
    "Conv",
    "ConvTranspose",
    "NetworkSpec",
    "PixelShuffle",
    "ResidualAdd",
    "ScaleBy",
    "benchmark_latency",
    "bicubic_resize",
    "build_network",
    "conv2d",
    "conv_transpose2d",
    "count_params",
    "pixel_shuffle",
    "pixel_unshuffle",
    "random_weights",
    "run_network",
    "run_size_sweep",
    "sr_gate",
    "upscale",
    "write_bench_csv",
]
