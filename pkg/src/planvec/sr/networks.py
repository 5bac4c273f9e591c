"""Layer plans for the four supported upscaling networks.

A plan is an ordered list of layer descriptors.  Each layer consumes the
previous layer's output unless it names an explicit ``source`` index
(-1 is the network input); ``ResidualAdd`` adds a second stream on top.
Learnable layers expose weights under the names "<layer-index>.w" and
"<layer-index>.b".

Plans follow the configurations published for each architecture, with two
documented adjustments: transposed-conv kernel sizes are chosen per scale so
the plan magnification is integer-exact (kernel = scale + 2*pad), and the
EDSR body depth realizes the architecture's published 43M-parameter size.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from ..errors import ShapeError, UnsupportedScaleError
from ..tensorio import WeightBundle

ARCHITECTURES = ("edsr", "espcn", "fsrcnn", "lapsrn")
SCALES = (2, 3, 4)

EDSR_BLOCKS = 34
EDSR_FEATS = 256
EDSR_RES_SCALE = 0.1


@dataclass(frozen=True)
class Conv:
    out_channels: int
    kernel: int
    stride: int = 1
    pad: int = 0
    source: int | None = None


@dataclass(frozen=True)
class ConvTranspose:
    out_channels: int
    kernel: int
    stride: int = 1
    pad: int = 0
    source: int | None = None


@dataclass(frozen=True)
class Activation:
    kind: str  # relu | prelu | leaky_relu
    slope: float = 0.01  # leaky_relu only; prelu slopes are learned per channel
    source: int | None = None


@dataclass(frozen=True)
class PixelShuffle:
    factor: int
    source: int | None = None


@dataclass(frozen=True)
class ResidualAdd:
    other: int  # layer index whose output is added (-1 = network input)
    source: int | None = None


@dataclass(frozen=True)
class ScaleBy:
    constant: float
    source: int | None = None


Layer = Conv | ConvTranspose | Activation | PixelShuffle | ResidualAdd | ScaleBy


@dataclass
class NetworkSpec:
    architecture: str
    scale_factor: int
    in_channels: int
    layers: list[Layer] = field(default_factory=list)

    def __post_init__(self):
        self.shape_check()

    def shape_check(self) -> list[tuple[int, Fraction]]:
        """Propagate (channels, magnification) through the plan.

        Raises ShapeError on any inconsistency; checks that the net
        magnification equals scale_factor.
        """
        states: list[tuple[int, Fraction]] = []  # per-layer output state

        def state_of(idx: int | None, at: int) -> tuple[int, Fraction]:
            if idx is None:
                idx = at - 1
            if idx == -1:
                return self.in_channels, Fraction(1)
            if not 0 <= idx < at:
                raise ShapeError(f"layer {at} references layer {idx}, not an earlier layer")
            return states[idx]

        for i, layer in enumerate(self.layers):
            ch, mag = state_of(getattr(layer, "source", None), i)
            if isinstance(layer, Conv):
                if layer.kernel < 1 or layer.stride < 1 or layer.pad < 0:
                    raise ShapeError(f"layer {i}: bad conv geometry")
                if layer.stride == 1 and layer.pad * 2 != layer.kernel - 1:
                    raise ShapeError(f"layer {i}: conv does not preserve spatial size")
                states.append((layer.out_channels, mag / layer.stride))
            elif isinstance(layer, ConvTranspose):
                if layer.kernel != layer.stride + 2 * layer.pad:
                    raise ShapeError(f"layer {i}: transposed conv not integer-exact")
                states.append((layer.out_channels, mag * layer.stride))
            elif isinstance(layer, Activation):
                if layer.kind not in ("relu", "prelu", "leaky_relu"):
                    raise ShapeError(f"layer {i}: unknown activation {layer.kind!r}")
                states.append((ch, mag))
            elif isinstance(layer, PixelShuffle):
                if ch % (layer.factor**2):
                    raise ShapeError(
                        f"layer {i}: {ch} channels not divisible by {layer.factor}^2"
                    )
                states.append((ch // layer.factor**2, mag * layer.factor))
            elif isinstance(layer, ResidualAdd):
                och, omag = state_of(layer.other, i)
                if (och, omag) != (ch, mag):
                    raise ShapeError(
                        f"layer {i}: residual add of ({och}, x{omag}) onto ({ch}, x{mag})"
                    )
                states.append((ch, mag))
            elif isinstance(layer, ScaleBy):
                states.append((ch, mag))
            else:
                raise ShapeError(f"layer {i}: unknown layer type {type(layer).__name__}")

        net = states[-1][1] if states else Fraction(1)
        if net != self.scale_factor:
            raise ShapeError(
                f"plan magnification x{net} != declared scale x{self.scale_factor}"
            )
        return states

    def weight_shapes(self) -> dict[str, tuple[int, ...]]:
        """Names and shapes of every learnable parameter, in plan order."""
        states = self.shape_check()
        shapes: dict[str, tuple[int, ...]] = {}
        for i, layer in enumerate(self.layers):
            src = getattr(layer, "source", None)
            idx = (i - 1) if src is None else src
            ch_in = self.in_channels if idx == -1 else states[idx][0]
            if isinstance(layer, Conv):
                shapes[f"{i}.w"] = (layer.out_channels, ch_in, layer.kernel, layer.kernel)
                shapes[f"{i}.b"] = (layer.out_channels,)
            elif isinstance(layer, ConvTranspose):
                shapes[f"{i}.w"] = (ch_in, layer.out_channels, layer.kernel, layer.kernel)
                shapes[f"{i}.b"] = (layer.out_channels,)
            elif isinstance(layer, Activation) and layer.kind == "prelu":
                shapes[f"{i}.w"] = (ch_in,)
        return shapes


def count_params(spec: NetworkSpec) -> int:
    """Total learnable element count of a plan."""
    total = 0
    for shape in spec.weight_shapes().values():
        n = 1
        for d in shape:
            n *= d
        total += n
    return total


def random_weights(spec: NetworkSpec, seed: int = 0, scale: float = 0.05) -> WeightBundle:
    """Gaussian random weights for smoke runs and latency benchmarks."""
    rng = np.random.RandomState(seed)
    bundle = WeightBundle()
    for name, shape in spec.weight_shapes().items():
        if name.endswith(".b"):
            bundle.add(name, np.zeros(shape, dtype=np.float32))
        else:
            bundle.add(name, (rng.randn(*shape) * scale).astype(np.float32))
    return bundle


def _check_scale(scale: int) -> None:
    if scale not in SCALES:
        raise UnsupportedScaleError(f"scale {scale} not in {SCALES}")


def _espcn(scale: int) -> NetworkSpec:
    layers = [
        Conv(64, 5, pad=2),
        Activation("relu"),
        Conv(32, 3, pad=1),
        Activation("relu"),
        Conv(scale**2, 3, pad=1),
        PixelShuffle(scale),
    ]
    return NetworkSpec("espcn", scale, 1, layers)


def _fsrcnn(scale: int, d: int = 56, s: int = 12, m: int = 4) -> NetworkSpec:
    layers: list[Layer] = [Conv(d, 5, pad=2), Activation("prelu")]
    layers += [Conv(s, 1, pad=0), Activation("prelu")]
    for _ in range(m):
        layers += [Conv(s, 3, pad=1), Activation("prelu")]
    layers += [Conv(d, 1, pad=0), Activation("prelu")]
    layers += [ConvTranspose(1, kernel=scale + 6, stride=scale, pad=3)]
    return NetworkSpec("fsrcnn", scale, 1, layers)


def _lapsrn(scale: int, feats: int = 64, depth: int = 10) -> NetworkSpec:
    layers: list[Layer] = []
    level_factors = [2, 2] if scale == 4 else [scale]
    img_src = -1   # current-resolution image stream
    feat_src = -1  # feature stream entering the level
    for level, r in enumerate(level_factors):
        k = r + 2  # pad 1
        for d in range(depth):
            layers.append(Conv(feats, 3, pad=1, source=feat_src if d == 0 else None))
            layers.append(Activation("leaky_relu", 0.2))
        layers.append(ConvTranspose(feats, kernel=k, stride=r, pad=1))
        layers.append(Activation("leaky_relu", 0.2))
        feat_src = len(layers) - 1
        layers.append(Conv(1, 3, pad=1))  # residual image at the new level
        residual = len(layers) - 1
        layers.append(ConvTranspose(1, kernel=k, stride=r, pad=1, source=img_src))
        layers.append(ResidualAdd(residual))
        img_src = len(layers) - 1
    return NetworkSpec("lapsrn", scale, 1, layers)


def _edsr(scale: int, blocks: int = EDSR_BLOCKS, feats: int = EDSR_FEATS) -> NetworkSpec:
    layers: list[Layer] = [Conv(feats, 3, pad=1)]
    head = 0
    for _ in range(blocks):
        entry = len(layers) - 1
        layers.append(Conv(feats, 3, pad=1))
        layers.append(Activation("relu"))
        layers.append(Conv(feats, 3, pad=1))
        layers.append(ScaleBy(EDSR_RES_SCALE))
        layers.append(ResidualAdd(entry))
    layers.append(Conv(feats, 3, pad=1))
    layers.append(ResidualAdd(head))
    if scale == 3:
        layers.append(Conv(feats * 9, 3, pad=1))
        layers.append(PixelShuffle(3))
    else:
        for _ in range(scale // 2):
            layers.append(Conv(feats * 4, 3, pad=1))
            layers.append(PixelShuffle(2))
    layers.append(Conv(3, 3, pad=1))
    return NetworkSpec("edsr", scale, 3, layers)


_BUILDERS = {
    "espcn": _espcn,
    "fsrcnn": _fsrcnn,
    "lapsrn": _lapsrn,
    "edsr": _edsr,
}


def build_network(arch: str, scale: int) -> NetworkSpec:
    """Canonical layer plan for an architecture at a scale in {2, 3, 4}."""
    key = arch.lower()
    if key not in _BUILDERS:
        raise ValueError(f"unknown architecture {arch!r}; expected one of {ARCHITECTURES}")
    _check_scale(scale)
    return _BUILDERS[key](scale)
