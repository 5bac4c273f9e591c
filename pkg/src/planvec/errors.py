"""Exception hierarchy shared by all planvec modules."""


class PlanvecError(Exception):
    """Base class for every error raised by this package."""


# --- tensor file format ---

class TensorFormatError(PlanvecError):
    """A tensor stream violates the .fpt format."""


class BadMagicError(TensorFormatError):
    """Stream does not start with the FPTN magic."""


class UnsupportedFormatError(TensorFormatError):
    """Version or dtype byte names a format this reader does not support."""


class TruncatedStreamError(TensorFormatError):
    """Stream ended before the declared header or payload was complete."""


class InvalidDimError(TensorFormatError):
    """A declared dimension is zero, or the dimension list is empty."""


# --- weight bundles ---

class BundleError(PlanvecError):
    """A weight bundle directory is inconsistent."""


class MissingBlobError(BundleError):
    """Manifest names a tensor file that does not exist."""


class ShapeMismatchError(BundleError):
    """Blob shape disagrees with the manifest declaration."""


class DuplicateNameError(BundleError):
    """Two manifest entries share one name."""


# --- network inference ---

class ShapeError(PlanvecError):
    """Operand shapes are inconsistent or produce a non-positive output."""


class WeightError(PlanvecError):
    """A required named weight is missing or has the wrong shape."""


class UnsupportedScaleError(PlanvecError):
    """Requested scale factor is outside {2, 3, 4}."""


# --- geometry / post-processing ---

class PolygonError(PlanvecError):
    """A polygon violates its structural invariants."""


class PolygonExplosionError(PlanvecError):
    """Candidate polygon count exceeded the hard cap; aborting instead of hanging."""


# --- ground truth parsing ---

class SvgError(PlanvecError):
    """An SVG ground-truth document cannot be parsed."""


class MalformedSvgError(SvgError):
    """Document is not well-formed XML."""


class MissingDimensionsError(SvgError):
    """Root element carries no usable width/height."""


class BadPolygonElementError(SvgError):
    """A polygon element has fewer than 3 points or unparsable coordinates."""


class ClassMapError(PlanvecError):
    """Class-map config file is malformed or incomplete."""


# --- evaluation / pipeline ---

class DimensionMismatchError(PlanvecError):
    """Two rasters or a raster and an image disagree in size or class count."""


class UndefinedBaselineError(PlanvecError):
    """Improvement requested against a non-positive baseline."""


class ManifestError(PlanvecError):
    """Batch manifest file is malformed."""
